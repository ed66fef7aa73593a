#include "atri/cli/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>

#include "atri/errors.hpp"

namespace atri::cli
{

namespace
{

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fillings_str(const std::vector<Filling>& fs)
{
    if (fs.empty()) return "none";
    std::string s;
    for (const auto& f : fs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(f.cusp) + ":" + std::to_string(f.p) + "/" + std::to_string(f.q);
    }
    return s;
}

class LineReader
{
public:
    explicit LineReader(std::string_view text) : text_{text} {}

    bool next(std::string_view& line)
    {
        if (pos_ >= text_.size()) return false;
        const auto nl = text_.find('\n', pos_);
        const auto end = nl == std::string_view::npos ? text_.size() : nl;
        line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        ++number_;
        return true;
    }
    int number() const { return number_; }

private:
    std::string_view text_;
    std::size_t pos_{0};
    int number_{0};
};

double to_double(std::string_view s, int line)
{
    const std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw SyntaxError(line, "bad number '" + tmp + "'");
    return v;
}

int to_int(std::string_view s, int line)
{
    const std::string tmp(s);
    char* end = nullptr;
    const long v = std::strtol(tmp.c_str(), &end, 10);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw SyntaxError(line, "bad integer '" + tmp + "'");
    return static_cast<int>(v);
}

bool to_bool(std::string_view s, int line)
{
    if (s == "true") return true;
    if (s == "false") return false;
    throw SyntaxError(line, "expected true or false");
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ReportDocument make_report(const SolveReport& rep, const std::string& name, std::string_view input_bytes)
{
    ReportDocument d;
    d.input_name = name;
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(input_bytes)));
    d.input_digest = buf;
    d.status = to_string(rep.status);
    d.fillings = rep.fillings;
    d.iterations = rep.iterations;
    d.dimension = rep.dimension;
    d.thin = rep.thin;
    d.start_margin = rep.start_margin;
    d.volume = rep.volume;
    d.lower_bound = rep.lower_bound;
    d.lower_bound_caveat = rep.bound_caveat;
    d.residual_edge = rep.residuals.edge;
    d.residual_completeness = rep.residuals.completeness;
    d.residual_filling = rep.residuals.filling;
    d.angles.assign(rep.angles.data(), rep.angles.data() + rep.angles.size());
    for (const auto& z : rep.shapes) d.shapes.emplace_back(z.real(), z.imag());
    return d;
}

std::string write_report(const ReportDocument& d)
{
    std::string s = "atri-report 1\n";
    auto kv = [&](const char* key, const std::string& value) {
        s += key;
        s += ": ";
        s += value;
        s += '\n';
    };
    kv("tool_version", d.tool_version);
    kv("input", d.input_name);
    kv("input_digest", d.input_digest);
    kv("status", d.status);
    kv("fillings", fillings_str(d.fillings));
    kv("iterations", std::to_string(d.iterations));
    kv("dimension", std::to_string(d.dimension));
    kv("thin", d.thin ? "true" : "false");
    kv("start_margin", num(d.start_margin));
    kv("volume", num(d.volume));
    kv("lower_bound", num(d.lower_bound));
    kv("lower_bound_caveat", d.lower_bound_caveat ? "true" : "false");
    kv("residual_edge", num(d.residual_edge));
    kv("residual_completeness", num(d.residual_completeness));
    kv("residual_filling", num(d.residual_filling));
    kv("angles", std::to_string(d.angles.size()));
    for (double a : d.angles) s += "  " + num(a) + "\n";
    kv("shapes", std::to_string(d.shapes.size()));
    for (const auto& [re, im] : d.shapes) s += "  " + num(re) + " " + num(im) + "\n";
    return s;
}

ReportDocument parse_report(std::string_view text)
{
    LineReader in(text);
    std::string_view line;
    if (!in.next(line) || line != "atri-report 1") throw SyntaxError(in.number(), "expected 'atri-report 1'");

    ReportDocument d;
    std::map<std::string, bool> seen;
    while (in.next(line)) {
        if (line.empty()) continue;
        const auto colon = line.find(": ");
        if (colon == std::string_view::npos) throw SyntaxError(in.number(), "expected 'key: value'");
        const std::string key(line.substr(0, colon));
        const std::string_view value = line.substr(colon + 2);
        const int ln = in.number();
        if (seen[key]) throw SyntaxError(ln, "duplicate key " + key);
        seen[key] = true;

        if (key == "tool_version") d.tool_version = value;
        else if (key == "input") d.input_name = value;
        else if (key == "input_digest") d.input_digest = value;
        else if (key == "status") d.status = value;
        else if (key == "fillings") {
            if (value != "none") {
                std::size_t i = 0;
                while (i <= value.size()) {
                    const auto sp = value.find(' ', i);
                    const auto tok = std::string(value.substr(i, sp == std::string_view::npos ? sp : sp - i));
                    Filling f;
                    int used = 0;
                    if (std::sscanf(tok.c_str(), "%d:%d/%d%n", &f.cusp, &f.p, &f.q, &used) != 3 ||
                        used != static_cast<int>(tok.size()))
                        throw SyntaxError(ln, "bad filling '" + tok + "'");
                    d.fillings.push_back(f);
                    if (sp == std::string_view::npos) break;
                    i = sp + 1;
                }
            }
        }
        else if (key == "iterations") d.iterations = to_int(value, ln);
        else if (key == "dimension") d.dimension = to_int(value, ln);
        else if (key == "thin") d.thin = to_bool(value, ln);
        else if (key == "start_margin") d.start_margin = to_double(value, ln);
        else if (key == "volume") d.volume = to_double(value, ln);
        else if (key == "lower_bound") d.lower_bound = to_double(value, ln);
        else if (key == "lower_bound_caveat") d.lower_bound_caveat = to_bool(value, ln);
        else if (key == "residual_edge") d.residual_edge = to_double(value, ln);
        else if (key == "residual_completeness") d.residual_completeness = to_double(value, ln);
        else if (key == "residual_filling") d.residual_filling = to_double(value, ln);
        else if (key == "angles" || key == "shapes") {
            const int count = to_int(value, ln);
            for (int k = 0; k < count; ++k) {
                if (!in.next(line) || line.substr(0, 2) != "  ")
                    throw SyntaxError(in.number(), "expected " + std::to_string(count) + " " + key + " entries");
                const auto body = line.substr(2);
                if (key == "angles") {
                    d.angles.push_back(to_double(body, in.number()));
                } else {
                    const auto sp = body.find(' ');
                    if (sp == std::string_view::npos) throw SyntaxError(in.number(), "shape needs two parts");
                    d.shapes.emplace_back(to_double(body.substr(0, sp), in.number()),
                                          to_double(body.substr(sp + 1), in.number()));
                }
            }
        }
        else throw SyntaxError(ln, "unknown key " + key);
    }
    return d;
}

}  // namespace atri::cli
