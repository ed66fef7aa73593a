#include "atri/native_format.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "atri/curves.hpp"
#include "atri/errors.hpp"

namespace atri
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

int to_int(std::string_view w, int line, const char* what)
{
    int value = 0;
    const auto* end = w.data() + w.size();
    const auto [ptr, ec] = std::from_chars(w.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw SyntaxError(line, std::string("expected integer ") + what + ", got '" + std::string(w) + "'");
    return value;
}

std::vector<Segment> parse_segments(std::string_view s, int line)
{
    std::vector<Segment> segs;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    while (true) {
        skip();
        if (i == s.size()) break;
        if (s[i] != '(') throw SyntaxError(line, "expected '(' in segment list");
        const auto close = s.find(')', i);
        if (close == std::string_view::npos) throw SyntaxError(line, "unterminated segment");
        std::string_view body = s.substr(i + 1, close - i - 1);
        int vals[4];
        for (int k = 0; k < 4; ++k) {
            const auto comma = body.find(',');
            if ((k < 3) != (comma != std::string_view::npos))
                throw SyntaxError(line, "segment needs four comma-separated integers");
            vals[k] = to_int(trim(body.substr(0, comma)), line, "in segment");
            body = k < 3 ? body.substr(comma + 1) : std::string_view{};
        }
        segs.push_back({vals[0], vals[1], vals[2], vals[3]});
        i = close + 1;
    }
    if (segs.empty()) throw SyntaxError(line, "empty segment list");
    return segs;
}

struct RawCurve {
    std::vector<Segment> segments;
    int line{0};
};

}  // namespace

NativeDocument parse_document(std::string_view text)
{
    std::string name = "unnamed";
    int n = -1;
    bool header = false;
    std::vector<std::optional<std::array<FaceGluing, 4>>> rows;
    std::map<int, std::pair<std::optional<RawCurve>, std::optional<RawCurve>>> curves;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view line = trim(raw);
        if (line.empty()) continue;

        if (!header) {
            const auto w = words(line);
            if (w.size() != 2 || w[0] != "atri") throw SyntaxError(line_no, "expected header 'atri 1'");
            if (w[1] != "1") throw SyntaxError(line_no, "unsupported format version " + std::string(w[1]));
            header = true;
            continue;
        }

        const auto colon = line.find(':');
        const auto head = words(line.substr(0, colon));
        const auto& key = head.front();

        if (key == "name") {
            if (colon != std::string_view::npos || head.size() < 2) throw SyntaxError(line_no, "malformed name line");
            name = std::string(trim(line.substr(4)));
        } else if (key == "tetrahedra") {
            if (n >= 0) throw SyntaxError(line_no, "tetrahedra given twice");
            if (head.size() != 2 || colon != std::string_view::npos)
                throw SyntaxError(line_no, "expected 'tetrahedra <n>'");
            n = to_int(head[1], line_no, "tetrahedron count");
            if (n <= 0) throw SyntaxError(line_no, "tetrahedron count must be positive");
            rows.assign(n, std::nullopt);
        } else if (key == "tet") {
            if (n < 0) throw SyntaxError(line_no, "'tet' before 'tetrahedra'");
            if (colon == std::string_view::npos || head.size() != 2) throw SyntaxError(line_no, "expected 'tet <i>:'");
            const int t = to_int(head[1], line_no, "tetrahedron index");
            if (t < 0 || t >= n) throw SyntaxError(line_no, "tetrahedron index out of range");
            if (rows[t]) throw SyntaxError(line_no, "tetrahedron " + std::to_string(t) + " given twice");
            const auto body = words(line.substr(colon + 1));
            if (body.size() != 8) throw SyntaxError(line_no, "expected four neighbor/permutation pairs");
            std::array<FaceGluing, 4> g{};
            for (int f = 0; f < 4; ++f) {
                g[f].neighbor = to_int(body[2 * f], line_no, "neighbor");
                if (g[f].neighbor < 0 || g[f].neighbor >= n) throw SyntaxError(line_no, "neighbor out of range");
                if (!Perm4::parse(body[2 * f + 1], g[f].perm))
                    throw SyntaxError(line_no, "bad permutation '" + std::string(body[2 * f + 1]) + "'");
            }
            rows[t] = g;
        } else if (key == "peripheral") {
            if (colon == std::string_view::npos || head.size() != 3)
                throw SyntaxError(line_no, "expected 'peripheral <cusp> meridian|longitude:'");
            const int c = to_int(head[1], line_no, "cusp index");
            RawCurve rc{parse_segments(line.substr(colon + 1), line_no), line_no};
            auto& slot = curves[c];
            auto& target = head[2] == "meridian" ? slot.first : head[2] == "longitude" ? slot.second : slot.first;
            if (head[2] != "meridian" && head[2] != "longitude")
                throw SyntaxError(line_no, "curve kind must be meridian or longitude");
            if (target) throw SyntaxError(line_no, "curve given twice");
            target = std::move(rc);
        } else {
            throw SyntaxError(line_no, "unknown keyword '" + std::string(key) + "'");
        }
    }
    if (!header) throw SyntaxError(line_no, "empty document");
    if (n < 0) throw SyntaxError(line_no, "missing 'tetrahedra' line");
    std::vector<std::array<FaceGluing, 4>> gluings;
    for (int t = 0; t < n; ++t) {
        if (!rows[t]) throw SyntaxError(line_no, "missing line for tetrahedron " + std::to_string(t));
        gluings.push_back(*rows[t]);
    }

    NativeDocument doc{Triangulation(name, std::move(gluings)), {}};
    const auto& tri = doc.triangulation;
    doc.peripheral.assign(tri.cusp_count(), std::nullopt);
    for (auto& [c, pair] : curves) {
        const int line = pair.first ? pair.first->line : pair.second->line;
        if (c < 0 || c >= tri.cusp_count()) throw SyntaxError(line, "cusp index out of range");
        if (!pair.first || !pair.second) throw SyntaxError(line, "meridian and longitude must be given together");
        PeripheralPair pp{{c, pair.first->segments}, {c, pair.second->segments}, true};
        validate_curve(tri, pp.meridian);
        validate_curve(tri, pp.longitude);
        doc.peripheral[c] = std::move(pp);
    }
    return doc;
}

Triangulation parse_triangulation(std::string_view text) { return parse_document(text).triangulation; }

NativeDocument read_document(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

}  // namespace atri
