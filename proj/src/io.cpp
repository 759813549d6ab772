/**
 * @file io.cpp
 */
#include "herzlab/io.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace herzlab {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("io: cannot open '" + path + "' for writing");
    out << std::setprecision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("io: cannot open '" + path + "' for reading");
    return in;
}

}  // namespace

void write_field(const SampledField& f, const std::string& base_path) {
    const SampledField fp = f.has_values() ? f : to_physical(f);
    const GridSpec& g = fp.grid();
    {
        json header;
        header["dim"] = g.dim;
        header["halfwidth"] = g.halfwidth;
        header["points_per_axis"] = g.points_per_axis;
        std::ofstream out = open_out(base_path + ".json");
        out << header.dump(2) << "\n";
    }
    std::ofstream out = open_out(base_path + ".csv");
    out << "index,re,im\n";
    const std::vector<cplx>& v = fp.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        out << i << "," << v[i].real() << "," << v[i].imag() << "\n";
    if (!out) throw InputError("io: write failed for '" + base_path + ".csv'");
}

SampledField read_field(const std::string& base_path) {
    GridSpec g;
    {
        std::ifstream in = open_in(base_path + ".json");
        json header;
        try {
            in >> header;
        } catch (const json::exception& e) {
            throw InputError("io: malformed field header: " + std::string(e.what()));
        }
        if (!header.contains("dim") || !header.contains("halfwidth") ||
            !header.contains("points_per_axis"))
            throw InputError("io: field header needs dim, halfwidth, points_per_axis");
        g.dim = header["dim"].get<int>();
        g.halfwidth = header["halfwidth"].get<double>();
        g.points_per_axis = header["points_per_axis"].get<int>();
        g.validate();
    }
    std::ifstream in = open_in(base_path + ".csv");
    std::string line;
    if (!std::getline(in, line) || line.rfind("index,re,im", 0) != 0)
        throw InputError("io: field table must start with 'index,re,im'");
    std::vector<cplx> vals(g.size());
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::size_t idx = 0;
        double re = 0, im = 0;
        char c1 = 0, c2 = 0;
        if (!(ss >> idx >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw InputError("io: malformed field row '" + line + "'");
        if (idx != rows)
            throw InputError("io: field rows must be consecutive from 0");
        if (idx >= vals.size())
            throw InputError("io: more rows than grid points");
        vals[idx] = cplx(re, im);
        ++rows;
    }
    if (rows != vals.size())
        throw InputError("io: expected " + std::to_string(vals.size()) +
                         " rows, found " + std::to_string(rows));
    return SampledField::from_values(g, std::move(vals));
}

void write_multiplier_csv(const DyadicSystem& sys, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "bin,xi_abs";
    for (int j = 0; j <= sys.j_max; ++j) out << ",m_" << j;
    out << "\n";
    for (std::size_t k = 0; k < sys.grid.size(); ++k) {
        out << k << "," << sys.grid.freq_radius(k);
        for (int j = 0; j <= sys.j_max; ++j) out << "," << sys.multipliers[j][k];
        out << "\n";
    }
    if (!out) throw InputError("io: write failed for '" + path + "'");
}

void write_breakdown_csv(const KtlBreakdown& b, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "level,annulus,contribution\n";
    for (std::size_t li = 0; li < b.levels.size(); ++li)
        for (std::size_t ai = 0; ai < b.annuli.size(); ++ai)
            out << b.levels[li] << "," << b.annuli[ai] << ","
                << b.entry[li][ai] << "\n";
    if (!out) throw InputError("io: write failed for '" + path + "'");
}

void write_trajectory_csv(const Trajectory& tr, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "time,norm\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        out << tr.times[i] << ",";
        if (i < tr.norm_trace.size()) out << tr.norm_trace[i];
        out << "\n";
    }
    if (!out) throw InputError("io: write failed for '" + path + "'");
}

void write_points_csv(const std::vector<std::array<double, 2>>& pts,
                      const std::string& path) {
    std::ofstream out = open_out(path);
    out << "x,y\n";
    for (const auto& p : pts) out << p[0] << "," << p[1] << "\n";
    if (!out) throw InputError("io: write failed for '" + path + "'");
}

std::string report_to_json(const std::vector<CheckReport>& reports,
                           const std::string& resolved_config_json,
                           double runtime_sec) {
    json root;
    json arr = json::array();
    json runtimes = json::array();
    int passed = 0, failed = 0, inconclusive = 0;
    for (const CheckReport& r : reports) {
        json jr;
        jr["check"] = r.check_name;
        jr["verdict"] = r.verdict;
        jr["samples"] = r.samples;
        jr["measured"] = json::object();
        for (const auto& [k, v] : r.measured) jr["measured"][k] = v;
        jr["expected"] = json::object();
        for (const auto& [k, ev] : r.expected)
            jr["expected"][k] = {{"value", ev.value}, {"tol", ev.tol},
                                 {"kind", ev.kind}};
        json pts = json::array();
        for (const auto& p : r.points) pts.push_back({p[0], p[1]});
        jr["points"] = pts;
        jr["notes"] = json::object();
        for (const auto& [k, v] : r.notes) jr["notes"][k] = v;
        arr.push_back(jr);
        runtimes.push_back({{"check", r.check_name}, {"runtime_sec", r.runtime_sec}});
        if (r.verdict == "pass") ++passed;
        else if (r.verdict == "fail") ++failed;
        else ++inconclusive;
    }
    root["reports"] = arr;
    try {
        root["config"] = json::parse(resolved_config_json);
    } catch (const json::exception&) {
        root["config"] = resolved_config_json;
    }
    root["summary"] = {{"total", static_cast<int>(reports.size())},
                       {"passed", passed},
                       {"failed", failed},
                       {"inconclusive", inconclusive},
                       {"all_passed", failed == 0 && inconclusive == 0}};
    // Wall-clock data kept apart so the rest of the payload is reproducible.
    root["meta"] = {{"runtime_sec", runtime_sec}, {"check_runtimes", runtimes}};
    return root.dump(2);
}

}  // namespace herzlab
