#include "nlcauchy/report.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nlcauchy/errors.hpp"

namespace nlcauchy {

Json to_json(const SeminormWitness& w) {
    return Json{{"x", {w.x[0], w.x[1]}}, {"h", {w.h[0], w.h[1]}}, {"value", w.value}};
}

Json to_json(const NormReport& r) {
    Json semis = Json::object();
    for (const auto& [b, v] : r.seminorms) semis[std::to_string(b)] = v;
    Json comps = Json::object();
    for (const auto& [b, v] : r.composite) comps[std::to_string(b)] = v;
    Json wits = Json::object();
    for (const auto& [b, w] : r.witnesses) wits[std::to_string(b)] = to_json(w);
    return Json{{"dim", r.dim},
                {"points_per_axis", r.n},
                {"alpha", r.alpha},
                {"beta", r.beta},
                {"sup_norm", r.sup},
                {"seminorms", semis},
                {"composite", comps},
                {"equiv_alpha_beta", r.equiv_alpha_beta},
                {"witnesses", wits}};
}

Json to_json(const ClauseResult& c) {
    return Json{{"clause", c.clause}, {"pass", c.pass},     {"value", c.value},
                {"bound", c.bound},   {"witness", c.witness}, {"detail", c.detail}};
}

Json to_json(const AssumptionReport& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses) clauses.push_back(to_json(c));
    return Json{{"all_pass", r.all_pass}, {"clauses", clauses}};
}

Json to_json(const IterationState& s) {
    return Json{{"iterations", s.iterations}, {"residuals", s.residuals},
                {"q_hat", s.q_hat},           {"lambda", s.lambda},
                {"defs_residual", s.defs_residual}, {"converged", s.converged}};
}

Json to_json(const MCEstimate& e) {
    return Json{{"value", e.value},
                {"std_error", e.std_error},
                {"paths", e.paths},
                {"s", e.s},
                {"x", {e.x[0], e.x[1]}}};
}

Json to_json(const std::vector<IncrementStat>& stats) {
    Json arr = Json::array();
    for (const auto& s : stats)
        arr.push_back(Json{{"t0", s.t0},
                           {"t1", s.t1},
                           {"mean", s.mean},
                           {"std_error", s.std_error},
                           {"paths", s.paths}});
    return arr;
}

void write_json_file(const Json& j, const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_solution(const Solution& u, const std::string& out_dir,
                    const std::string& base_name, const std::string& format) {
    std::filesystem::create_directories(out_dir);
    if (format == "json") {
        Json stamps = Json::array();
        for (const auto& g : u.stamps) stamps.push_back(Json{{"t", g.time_stamp},
                                                             {"values", g.values}});
        Json j{{"T", u.T},
               {"lambda", u.lambda},
               {"dim", u.stamps.front().dim},
               {"points_per_axis", u.stamps.front().n},
               {"stamps", stamps}};
        write_json_file(j, out_dir + "/" + base_name + ".json");
        return;
    }
    if (format != "csv") throw ConfigError("unknown solution format: " + format);
    for (size_t i = 0; i < u.stamps.size(); ++i) {
        std::ostringstream name;
        name << out_dir << "/" << base_name << "_" << std::setw(4) << std::setfill('0') << i
             << ".csv";
        std::ofstream out(name.str());
        const auto& g = u.stamps[i];
        out << "# t = " << std::setprecision(17) << g.time_stamp << "\n";
        if (g.dim == 1) {
            out << "x,u\n";
            for (int ix = 0; ix < g.n; ++ix)
                out << ix * g.dx() << "," << std::setprecision(17) << g.values[ix] << "\n";
        } else {
            out << "x1,x2,u\n";
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix)
                    out << ix * g.dx() << "," << iy * g.dx() << "," << std::setprecision(17)
                        << g.values[size_t(iy) * g.n + ix] << "\n";
        }
    }
}

void write_residual_log_csv(const IterationState& s, const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    out << "iteration,residual,ratio,lambda\n";
    for (size_t i = 0; i < s.residuals.size(); ++i) {
        double ratio = (i > 0 && s.residuals[i - 1] > 0.0)
                           ? s.residuals[i] / s.residuals[i - 1]
                           : 0.0;
        out << i + 1 << "," << std::setprecision(17) << s.residuals[i] << "," << ratio << ","
            << s.lambda << "\n";
    }
}

void write_path_csv(const JumpPath& p, const std::string& path) {
    std::filesystem::path fp(path);
    if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
    std::ofstream out(path);
    out << "time,x1,x2\n";
    for (size_t i = 0; i < p.times.size(); ++i)
        out << std::setprecision(17) << p.times[i] << "," << p.states[i][0] << ","
            << p.states[i][1] << "\n";
    out << "# events: time,kind,jump1,jump2,accepted\n";
    for (const auto& e : p.events)
        out << "# " << std::setprecision(17) << e.time << "," << e.kind << "," << e.jump[0]
            << "," << e.jump[1] << "," << (e.accepted ? 1 : 0) << "\n";
}

std::string render_report(const Json& report) {
    std::ostringstream out;
    out << "acceptance report\n";
    if (report.contains("generated_at"))
        out << "generated: " << report.at("generated_at").get<std::string>() << "\n";
    if (report.contains("criteria")) {
        out << "\n  id  status  name\n";
        for (const auto& c : report.at("criteria")) {
            out << "  " << std::setw(2) << c.at("id").get<int>() << "  "
                << (c.at("pass").get<bool>() ? "PASS " : "FAIL ") << "  "
                << c.at("name").get<std::string>() << "\n";
        }
        int passed = 0, total = 0;
        for (const auto& c : report.at("criteria")) {
            ++total;
            if (c.at("pass").get<bool>()) ++passed;
        }
        out << "\n" << passed << "/" << total << " criteria passed\n";
    }
    return out.str();
}

}  // namespace nlcauchy
