// io.hpp - file formats: excitation CSV/JSON, cavity JSON, solution/stick/mode
// JSON, spectrum/metrics/convergence CSV.

#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "polariton/bath.hpp"
#include "polariton/core.hpp"
#include "polariton/solution.hpp"
#include "polariton/spectrum.hpp"

namespace polariton::io {

using json = nlohmann::json;

inline constexpr std::string_view kExcitationHeader = "index,energy_eV,dx_eA,dy_eA,dz_eA";

/// Fixed scientific formatting, 12 significant digits.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Locale-independent parse of a whole field; nullopt on any trailing garbage.
inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline bool looks_complex(std::string_view s) {
    return !s.empty() && (s.back() == 'i' || s.back() == 'j') && s.find_first_of("0123456789") != s.npos;
}

// ---------------------------------------------------------------- excitations

/// Parses the excitation CSV. All row-level problems are collected and thrown
/// together as a ValidationError; invariant checks run on the parsed rows too.
inline std::vector<Excitation> parse_excitations_csv(std::istream& in) {
    ValidationReport report;
    std::vector<Excitation> rows;
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("excitation CSV is empty");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
    const std::string_view header = trim(line);
    const bool has_label = header == std::string(kExcitationHeader) + ",label";
    if (!has_label && header != kExcitationHeader)
        throw ValidationError("bad header '" + std::string(header) + "', expected '" +
                              std::string(kExcitationHeader) + "[,label]'");
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        const std::size_t expected = has_label ? 6 : 5;
        const std::string where = "row " + std::to_string(row);
        if (fields.size() != expected && !(has_label && fields.size() == 5)) {
            report.add("row", row, where + ": expected " + std::to_string(expected) + " fields, got " +
                                       std::to_string(fields.size()));
            continue;
        }
        Excitation e;
        bool good = true;
        std::size_t idx = 0;
        const auto [p, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), idx);
        if (ec != std::errc() || p != fields[0].data() + fields[0].size() || fields[0].empty()) {
            report.add("index", row, where + ": index '" + std::string(fields[0]) + "' is not a non-negative integer");
            good = false;
        }
        e.index = idx;
        static constexpr const char* names[] = {"energy_eV", "dx_eA", "dy_eA", "dz_eA"};
        double values[4] = {};
        for (int c = 0; c < 4; ++c) {
            const auto v = parse_double(fields[1 + c]);
            if (!v) {
                const std::string what = looks_complex(fields[1 + c]) ? "complex values are not supported"
                                                                      : "not a number";
                report.add(names[c], row,
                           where + ": " + names[c] + " '" + std::string(fields[1 + c]) + "' " + what);
                good = false;
            } else {
                values[c] = *v;
            }
        }
        if (good && !(std::isfinite(values[0]) && values[0] > 0.0)) {
            report.add("energy_eV", row, where + ": nonpositive energy at index " + std::to_string(idx));
            good = false;
        }
        if (!good) continue;
        e.energy = values[0];
        e.dipole = Vec3(values[1], values[2], values[3]);
        if (has_label && fields.size() == 6) e.label = std::string(fields[5]);
        rows.push_back(std::move(e));
    }
    if (rows.empty() && report.ok()) report.add("excitations", std::nullopt, "no excitation rows");
    if (report.ok()) {
        ValidationReport inv;
        check_excitations(rows, inv);
        for (auto& v : inv.violations) {
            if (v.index) v.message = "row " + std::to_string(*v.index + 1) + ": " + v.message;
            report.violations.push_back(std::move(v));
        }
    }
    if (!report.ok()) throw ValidationError(std::move(report));
    return rows;
}

inline json excitation_to_json(const Excitation& e) {
    json j = {{"index", e.index}, {"energy_eV", e.energy}, {"dx_eA", e.dipole[0]},
              {"dy_eA", e.dipole[1]}, {"dz_eA", e.dipole[2]}};
    if (!e.label.empty()) j["label"] = e.label;
    return j;
}

inline json excitations_to_json(const ExcitationSet& set) {
    json arr = json::array();
    for (const auto& e : set) arr.push_back(excitation_to_json(e));
    return arr;
}

inline std::vector<Excitation> parse_excitations_json(const json& doc) {
    const json& arr = doc.is_object() && doc.contains("excitations") ? doc.at("excitations") : doc;
    if (!arr.is_array()) throw ValidationError("excitation JSON must be an array of objects");
    std::vector<Excitation> rows;
    ValidationReport report;
    for (std::size_t r = 0; r < arr.size(); ++r) {
        const auto& o = arr[r];
        try {
            Excitation e;
            e.index = o.at("index").get<std::size_t>();
            e.energy = o.at("energy_eV").get<double>();
            e.dipole = Vec3(o.at("dx_eA").get<double>(), o.at("dy_eA").get<double>(), o.at("dz_eA").get<double>());
            if (o.contains("label")) e.label = o.at("label").get<std::string>();
            rows.push_back(std::move(e));
        } catch (const json::exception& ex) {
            report.add("row", r, "entry " + std::to_string(r) + ": " + ex.what());
        }
    }
    if (report.ok()) check_excitations(rows, report);
    if (!report.ok()) throw ValidationError(std::move(report));
    return rows;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(what + " is not valid JSON: " + e.what());
    }
}

/// Raw rows from a .csv or .json file (no sorting).
inline std::vector<Excitation> read_excitation_rows(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    if (path.extension() == ".json") return parse_excitations_json(parse_json_text(text, path.string()));
    std::istringstream in(text);
    return parse_excitations_csv(in);
}

inline ExcitationSet read_excitations(const std::filesystem::path& path) {
    return ExcitationSet::create(read_excitation_rows(path), path.string());
}

inline std::string excitations_csv(const ExcitationSet& set) {
    std::string out = std::string(kExcitationHeader) + ",label\n";
    for (const auto& e : set) {
        out += std::to_string(e.index) + ',' + format_number(e.energy) + ',' + format_number(e.dipole[0]) + ',' +
               format_number(e.dipole[1]) + ',' + format_number(e.dipole[2]) + ',' + e.label + '\n';
    }
    return out;
}

// ---------------------------------------------------------------- cavity

inline CavitySpec cavity_from_json(const json& j) {
    try {
        CavitySpec c;
        c.center_energy = j.at("center_energy_eV").get<double>();
        c.strength = j.at("strength_ev05_per_nm").get<double>();
        const auto pol = j.at("polarization");
        if (!pol.is_array() || pol.size() != 3) throw ValidationError("polarization must have 3 components");
        c.polarization = Vec3(pol[0].get<double>(), pol[1].get<double>(), pol[2].get<double>());
        c.loss_rate = j.value("loss_rate_eV", 0.0);
        c.mode_spacing = j.value("mode_spacing_eV", 0.0);
        if (j.contains("window_halfwidth_eV") && !j.at("window_halfwidth_eV").is_null())
            c.window_halfwidth = j.at("window_halfwidth_eV").get<double>();
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("cavity JSON: ") + e.what());
    }
}

inline json cavity_to_json(const CavitySpec& c) {
    json j = {{"center_energy_eV", c.center_energy},
              {"strength_ev05_per_nm", c.strength},
              {"polarization", {c.polarization[0], c.polarization[1], c.polarization[2]}},
              {"loss_rate_eV", c.loss_rate},
              {"mode_spacing_eV", c.mode_spacing}};
    if (c.window_halfwidth) j["window_halfwidth_eV"] = *c.window_halfwidth;
    return j;
}

inline CavitySpec read_cavity(const std::filesystem::path& path) {
    return cavity_from_json(parse_json_text(read_text_file(path), path.string()));
}

// ---------------------------------------------------------------- results

inline json matrix_to_json(const Eigen::MatrixXd& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline json solution_to_json(const PolaritonSolution& sol) {
    json energies = json::array();
    for (Eigen::Index l = 0; l < sol.energies.size(); ++l) energies.push_back(sol.energies[l]);
    return {{"model_tag", to_string(sol.model)},
            {"energies_eV", std::move(energies)},
            {"el_proj", matrix_to_json(sol.el_proj)},
            {"ph_proj", matrix_to_json(sol.ph_proj)}};
}

inline json modes_to_json(std::span<const PhotonMode> modes) {
    json arr = json::array();
    for (const auto& m : modes)
        arr.push_back({{"energy_eV", m.energy},
                       {"polarization", {m.polarization[0], m.polarization[1], m.polarization[2]}},
                       {"strength_ev05_per_nm", m.strength}});
    return arr;
}

inline std::vector<PhotonMode> modes_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("modes") ? j.at("modes") : j;
    std::vector<PhotonMode> modes;
    try {
        for (const auto& o : arr) {
            const auto& p = o.at("polarization");
            modes.push_back({o.at("energy_eV").get<double>(),
                             Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()),
                             o.at("strength_ev05_per_nm").get<double>()});
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("mode JSON: ") + e.what());
    }
    return modes;
}

inline json bath_to_json(const BathDiscretization& bath) {
    return {{"modes", modes_to_json(bath.modes)},
            {"metadata",
             {{"coverage", bath.coverage},
              {"spacing_eV", bath.spacing},
              {"window_halfwidth_eV", bath.window},
              {"mode_count", bath.modes.size()},
              {"dropped_modes", bath.dropped}}}};
}

inline json sticks_to_json(std::span<const Stick> sticks, Axis axis) {
    json arr = json::array();
    for (std::size_t l = 0; l < sticks.size(); ++l)
        arr.push_back({{"state", l},
                       {"energy_eV", sticks[l].energy},
                       {"strength_eVA2", sticks[l].strength},
                       {"photonic_weight", sticks[l].photonic_weight},
                       {"electronic_weight", 1.0 - sticks[l].photonic_weight}});
    return {{"axis", to_string(axis)}, {"sticks", std::move(arr)}};
}

inline std::string spectrum_csv(const SpectrumGrid& grid) {
    std::string out = "energy_eV,absorption_eVA2\n";
    for (std::size_t j = 0; j < grid.axis.size(); ++j)
        out += format_number(grid.axis[j]) + ',' + format_number(grid.values[j]) + '\n';
    return out;
}

inline std::string metrics_csv(std::span<const SweepPoint> points) {
    std::string out = "lambda,lower_energy_eV,peak_abs_eVA2,photonic_weight,effective_dipole_eA\n";
    for (const auto& p : points)
        out += format_number(p.strength) + ',' + format_number(p.metrics.lower_energy) + ',' +
               format_number(p.metrics.lower_peak_absorption) + ',' +
               format_number(p.metrics.lower_photonic_weight) + ',' + format_number(p.metrics.effective_dipole) +
               '\n';
    return out;
}

inline std::string convergence_csv(const ConvergenceReport& report) {
    std::string out = "excitations,max_energy_eV,integrated_abs_eVA2,relative_change,converged\n";
    for (const auto& r : report.rows)
        out += std::to_string(r.excitations) + ',' + format_number(r.max_excitation_energy) + ',' +
               format_number(r.integrated) + ',' + format_number(r.relative_change) + ',' +
               (r.converged ? "1" : "0") + '\n';
    return out;
}

}  // namespace polariton::io
