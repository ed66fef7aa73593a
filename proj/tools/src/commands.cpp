#include "atri/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "atri/cli/report.hpp"
#include "atri/native_format.hpp"

namespace atri::cli
{

namespace
{

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

AngleVector read_angles(const std::string& path)
{
    std::istringstream text(slurp(path));
    std::vector<double> vals;
    std::string line;
    int line_no = 0;
    while (std::getline(text, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size()) throw SyntaxError(line_no, "bad angle '" + tok + "'");
            vals.push_back(v);
        }
    }
    return Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

const char* kBoundCaveat =
    "bounds the hyperbolic volume from below provided some triangulation of the manifold "
    "carries an interior critical point";

}  // namespace

Filling parse_fill(const std::string& spec)
{
    Filling f;
    int used = 0;
    if (std::sscanf(spec.c_str(), "%d:%d/%d%n", &f.cusp, &f.p, &f.q, &used) != 3 ||
        used != static_cast<int>(spec.size()))
        throw Error("bad filling '" + spec + "', expected C:P/Q");
    return f;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err)
{
    try {
        const auto doc = read_document(path);
        const auto& tri = doc.triangulation;
        const auto cs = build_constraints(tri);
        const auto rd = rank_and_dimension(cs, tri.cusp_count());
        out << "name: " << tri.name() << '\n';
        out << "tetrahedra: " << tri.tet_count() << '\n';
        out << "edge degrees:";
        for (const auto& ec : tri.edge_classes()) out << ' ' << ec.degree();
        out << '\n';
        out << "cusps: " << tri.cusp_count() << '\n';
        out << "rank A = " << rd.rank << '\n';
        out << "dim A = " << rd.dimension << '\n';
        const auto ip = initial_point(cs);
        switch (ip.feasibility) {
            case Feasibility::Interior:
                out << "feasible: yes (margin " << num(ip.margin) << ")\n";
                return kOk;
            case Feasibility::Thin:
                out << "feasible: no (margin " << num(ip.margin) << " below floor)\n";
                err << "warning: angle polytope is nonempty but numerically thin\n";
                return kInfeasible;
            case Feasibility::Empty:
                out << "feasible: no\n";
                return kInfeasible;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kError;
}

int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out, std::ostream& err)
{
    try {
        const std::string bytes = slurp(path);
        const auto doc = parse_document(bytes);
        const auto& tri = doc.triangulation;
        SolveOptions opts;
        opts.gradient_tolerance = flags.tolerance;
        opts.max_iterations = flags.max_iterations;
        if (!(opts.gradient_tolerance > 0) || opts.max_iterations <= 0)
            throw Error("--tol and --max-iters must be positive");
        std::vector<Filling> fills;
        for (const auto& s : flags.fills) fills.push_back(parse_fill(s));

        const auto rep = solve({tri, peripheral_curves(tri, doc.peripheral), fills}, opts);
        const std::string text = write_report(make_report(rep, tri.name(), bytes));

        std::ostream* summary = &out;
        if (flags.report_path.empty()) {
            out << text;
            summary = &err;
        } else {
            std::ofstream rf(flags.report_path, std::ios::binary);
            if (!(rf << text)) throw Error("cannot write " + flags.report_path);
        }
        if (!flags.quiet) {
            *summary << tri.name() << ": " << to_string(rep.status);
            if (rep.status != SolveStatus::Infeasible)
                *summary << " volume " << num(rep.volume) << " iterations " << rep.iterations;
            else if (rep.thin)
                *summary << " (polytope numerically thin)";
            *summary << '\n';
        }
        switch (rep.status) {
            case SolveStatus::InteriorCriticalPoint: return kOk;
            case SolveStatus::BoundaryMaximum: return kBoundary;
            case SolveStatus::Infeasible: return kInfeasible;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kError;
}

int cmd_bound(const std::string& path, const std::string& angles_path, std::ostream& out, std::ostream& err)
{
    try {
        const auto tri = read_document(path).triangulation;
        const auto v = read_angles(angles_path);
        if (v.size() != tri.coordinate_count())
            throw Error("expected " + std::to_string(tri.coordinate_count()) + " angles, found " +
                        std::to_string(v.size()));
        try {
            const double bound = volume_lower_bound(tri, v);
            out << "volume: " << num(bound) << '\n';
            out << "note: " << kBoundCaveat << '\n';
            return kOk;
        } catch (const NotFeasible& e) {
            err << "not feasible: " << e.what() << '\n';
            return kInfeasible;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hyperbolic structures on cusped 3-manifolds by volume maximization", "atri"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string path;
    auto* check = app.add_subcommand("check", "validate a triangulation and test its angle polytope");
    check->add_option("file", path, "triangulation file")->required();

    SolveFlags flags;
    auto* solve_cmd = app.add_subcommand("solve", "maximize volume and verify the resulting structure");
    solve_cmd->add_option("file", path, "triangulation file")->required();
    solve_cmd->add_option("--tol", flags.tolerance, "reduced gradient tolerance");
    solve_cmd->add_option("--max-iters", flags.max_iterations, "iteration limit");
    solve_cmd->add_option("--fill", flags.fills, "Dehn filling C:P/Q (repeatable)");
    solve_cmd->add_option("--report", flags.report_path, "write the report here instead of stdout");
    solve_cmd->add_flag("--quiet", flags.quiet, "no summary line");

    std::string angles_path;
    auto* bound = app.add_subcommand("bound", "volume of a given angle structure");
    bound->add_option("file", path, "triangulation file")->required();
    bound->add_option("--angles", angles_path, "file with 3n angles in radians")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kError;
    }

    if (*check) return cmd_check(path, out, err);
    if (*solve_cmd) return cmd_solve(path, flags, out, err);
    return cmd_bound(path, angles_path, out, err);
}

}  // namespace atri::cli
