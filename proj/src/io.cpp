#include "mrhs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mrhs::io {

namespace {

// Splits into significant lines, dropping blanks and '#' comment lines but
// remembering original line numbers for error reporting.
struct Lines {
    std::vector<std::pair<std::size_t, std::string>> items;
    std::size_t pos = 0;

    explicit Lines(std::string_view text) {
        std::size_t line_no = 0, start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++line_no;
            std::string_view line = text.substr(start, end - start);
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first != std::string_view::npos && line[first] != '#')
                items.emplace_back(line_no, std::string(line));
            start = end + 1;
            if (end == text.size()) break;
        }
    }

    bool done() const { return pos >= items.size(); }
    std::size_t line() const { return done() ? (items.empty() ? 1 : items.back().first) : items[pos].first; }

    std::vector<std::string> next(const char* what) {
        if (done()) throw ParseError(line(), std::string("unexpected end of file, expected ") + what);
        std::istringstream is(items[pos].second);
        std::vector<std::string> toks;
        std::string t;
        while (is >> t) toks.push_back(t);
        ++pos;
        return toks;
    }
};

std::uint64_t to_uint(const std::string& s, std::size_t line, const char* what) {
    std::uint64_t v = 0;
    if (s.empty()) throw ParseError(line, std::string("expected ") + what);
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            throw ParseError(line, std::string("expected non-negative integer for ") + what +
                                       ", got '" + s + "'");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        if (v > 0xFFFFFFFFull) throw ParseError(line, std::string(what) + " out of range");
    }
    return v;
}

std::uint64_t keyword_value(Lines& in, const char* key) {
    std::size_t ln = in.line();
    auto toks = in.next(key);
    if (toks.size() != 2 || toks[0] != key)
        throw ParseError(ln, std::string("expected '") + key + " <int>'");
    return to_uint(toks[1], ln, key);
}

std::vector<FieldElem> parse_vector(Lines& in, std::size_t len, const FieldSpec& f,
                                    const char* what) {
    std::size_t ln = in.line();
    auto toks = in.next(what);
    if (toks.size() != len)
        throw ParseError(ln, std::string(what) + ": expected " + std::to_string(len) +
                                 " entries, got " + std::to_string(toks.size()));
    std::vector<FieldElem> v(len);
    for (std::size_t i = 0; i < len; ++i) {
        std::uint64_t x = to_uint(toks[i], ln, what);
        if (x >= f.q())
            throw ParseError(ln, std::string(what) + ": entry " + std::to_string(x) +
                                     " not reduced mod " + std::to_string(f.q()));
        v[i] = static_cast<FieldElem>(x);
    }
    return v;
}

void write_vector(std::string& out, const std::vector<FieldElem>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(v[i]);
    }
    out += '\n';
}

}  // namespace

std::string serialize_system(const MrhsSystem& sys) {
    std::string out = "MRHS 1\n";
    out += "q " + std::to_string(sys.field.q()) + '\n';
    out += "n " + std::to_string(sys.n) + '\n';
    out += "m " + std::to_string(sys.m()) + '\n';
    for (const MrhsEquation& e : sys.equations) {
        out += "eq " + std::to_string(e.t()) + ' ' + std::to_string(e.s.size()) + '\n';
        for (std::size_t r = 0; r < e.t(); ++r) write_vector(out, e.a.row(r));
        for (const Rhs& b : e.s) write_vector(out, b);
    }
    return out;
}

MrhsSystem parse_system(std::string_view text) {
    Lines in(text);
    std::size_t ln = in.line();
    auto head = in.next("MRHS header");
    if (head.size() != 2 || head[0] != "MRHS" || head[1] != "1")
        throw ParseError(ln, "expected header 'MRHS 1'");
    std::uint64_t q = keyword_value(in, "q");
    std::uint64_t n = keyword_value(in, "n");
    std::uint64_t m = keyword_value(in, "m");
    FieldSpec f(static_cast<std::uint32_t>(q));
    if (m < 1) throw ParseError(in.line(), "m must be at least 1");

    MrhsSystem sys{static_cast<std::size_t>(n), f, {}};
    sys.equations.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        ln = in.line();
        auto toks = in.next("'eq <t> <s>'");
        if (toks.size() != 3 || toks[0] != "eq") throw ParseError(ln, "expected 'eq <t> <s>'");
        std::uint64_t t = to_uint(toks[1], ln, "t");
        std::uint64_t s = to_uint(toks[2], ln, "s");
        if (t < 1) throw ParseError(ln, "equation needs at least one row");
        std::vector<std::vector<FieldElem>> rows;
        for (std::uint64_t r = 0; r < t; ++r) rows.push_back(parse_vector(in, n, f, "matrix row"));
        std::vector<Rhs> rhs;
        for (std::uint64_t r = 0; r < s; ++r) rhs.push_back(parse_vector(in, t, f, "rhs row"));
        std::size_t before = rhs.size();
        MrhsEquation e = make_equation(Mat::from_rows(f, n, rows), std::move(rhs));
        if (e.s.size() != before) throw ParseError(ln, "duplicate rhs rows in equation");
        sys.equations.push_back(std::move(e));
    }
    if (!in.done()) throw ParseError(in.line(), "trailing content after last equation");
    validate_system(sys);
    return sys;
}

std::string serialize_family(const VectorFamily& fam) {
    std::string out = "FAM 1\n";
    out += "q " + std::to_string(fam.field.q()) + '\n';
    out += "n " + std::to_string(fam.n) + '\n';
    out += "m " + std::to_string(fam.m()) + '\n';
    out += "t " + std::to_string(fam.t) + '\n';
    for (const Mat& s : fam.sets) {
        out += "set " + std::to_string(s.rows()) + '\n';
        for (std::size_t r = 0; r < s.rows(); ++r) write_vector(out, s.row(r));
    }
    return out;
}

VectorFamily parse_family(std::string_view text) {
    Lines in(text);
    std::size_t ln = in.line();
    auto head = in.next("FAM header");
    if (head.size() != 2 || head[0] != "FAM" || head[1] != "1")
        throw ParseError(ln, "expected header 'FAM 1'");
    std::uint64_t q = keyword_value(in, "q");
    std::uint64_t n = keyword_value(in, "n");
    std::uint64_t m = keyword_value(in, "m");
    std::uint64_t t = keyword_value(in, "t");
    FieldSpec f(static_cast<std::uint32_t>(q));
    if (m < 1) throw ParseError(in.line(), "m must be at least 1");

    VectorFamily fam{static_cast<std::size_t>(n), f, static_cast<std::size_t>(t), {}};
    fam.sets.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        ln = in.line();
        auto toks = in.next("'set <size>'");
        if (toks.size() != 2 || toks[0] != "set") throw ParseError(ln, "expected 'set <size>'");
        std::uint64_t size = to_uint(toks[1], ln, "set size");
        if (size < 1) throw ParseError(ln, "set needs at least one vector");
        if (size > t) throw ParseError(ln, "set larger than declared bound t");
        std::vector<std::vector<FieldElem>> rows;
        for (std::uint64_t r = 0; r < size; ++r) rows.push_back(parse_vector(in, n, f, "vector"));
        fam.sets.push_back(Mat::from_rows(f, n, rows));
    }
    if (!in.done()) throw ParseError(in.line(), "trailing content after last set");
    validate_family(fam);
    return fam;
}

std::string sniff_format(std::string_view text) {
    Lines in(text);
    if (in.done()) return "";
    auto toks = in.next("header");
    return toks.empty() ? "" : toks[0];
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void save_text(const std::string& path, std::string_view text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw Error("write failed for " + path);
}

MrhsSystem load_system(const std::string& path) { return parse_system(read_text(path)); }
VectorFamily load_family(const std::string& path) { return parse_family(read_text(path)); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace mrhs::io
