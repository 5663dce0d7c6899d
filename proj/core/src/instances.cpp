#include "rectpart/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace rectpart {

namespace {

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    return out;
}

std::vector<std::string> tokens_of(const std::string &line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

Load parse_load(const std::string &tok, int line) {
    if (tok.empty() || tok[0] == '-') throw ParseError("negative cell '" + tok + "'", line);
    Load value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9') throw ParseError("bad integer '" + tok + "'", line);
        Load digit = static_cast<Load>(ch - '0');
        if (value > (std::numeric_limits<Load>::max() - digit) / 10)
            throw ParseError("integer overflow in '" + tok + "'", line);
        value = value * 10 + digit;
    }
    return value;
}

int parse_dim(const std::string &tok, int line) {
    Load v = parse_load(tok, line);
    if (v == 0 || v > static_cast<Load>(std::numeric_limits<int>::max()))
        throw ParseError("dimension out of range '" + tok + "'", line);
    return static_cast<int>(v);
}

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double t = len2 == 0.0 ? 0.0 : ((px - ax) * dx + (py - ay) * dy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const double cx = ax + t * dx, cy = ay + t * dy;
    return std::hypot(px - cx, py - cy);
}

}  // namespace

const char *to_string(GenKind k) {
    switch (k) {
        case GenKind::kUniform: return "uniform";
        case GenKind::kDiagonal: return "diagonal";
        case GenKind::kPeak: return "peak";
        case GenKind::kMultiPeak: return "multipeak";
    }
    return "?";
}

GenKind gen_kind_from_string(const std::string &s) {
    if (s == "uniform") return GenKind::kUniform;
    if (s == "diagonal") return GenKind::kDiagonal;
    if (s == "peak") return GenKind::kPeak;
    if (s == "multipeak") return GenKind::kMultiPeak;
    throw Error("unknown generator kind: " + s);
}

std::string GenSpec::describe() const {
    std::ostringstream ss;
    ss << to_string(kind) << " n1=" << n1 << " n2=" << n2;
    if (kind == GenKind::kUniform) ss << " delta=" << delta;
    if (kind == GenKind::kMultiPeak) ss << " peaks=" << peaks;
    ss << " seed=" << seed;
    return ss.str();
}

std::uint64_t uniform_index(std::mt19937_64 &rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw Error("empty draw range");
    const std::uint64_t range = hi - lo + 1;  // wraps to 0 for the full range
    if (range == 0) return rng();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % range;
}

double uniform_real01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

LoadMatrix gen_uniform(const GenSpec &spec) {
    if (spec.delta < 1.0) throw Error("delta must be at least 1");
    if (spec.n1 < 1 || spec.n2 < 1) throw Error("matrix dimensions must be at least 1x1");
    const Load hi = static_cast<Load>(std::floor(1000.0 * spec.delta + 0.5));
    std::mt19937_64 rng(spec.seed);
    std::vector<Load> cells;
    cells.reserve(static_cast<std::size_t>(spec.n1) * spec.n2);
    for (long long i = 0; i < static_cast<long long>(spec.n1) * spec.n2; ++i)
        cells.push_back(uniform_index(rng, 1000, hi));
    return LoadMatrix(spec.n1, spec.n2, std::move(cells));
}

LoadMatrix gen_gravity(const GenSpec &spec, std::vector<std::pair<int, int>> *refs_out) {
    if (spec.n1 < 1 || spec.n2 < 1) throw Error("matrix dimensions must be at least 1x1");
    std::mt19937_64 rng(spec.seed);
    std::vector<std::pair<int, int>> refs;
    int npeaks = 0;
    if (spec.kind == GenKind::kPeak) npeaks = 1;
    if (spec.kind == GenKind::kMultiPeak) {
        if (spec.peaks < 1) throw Error("at least one peak required");
        npeaks = spec.peaks;
    }
    for (int i = 0; i < npeaks; ++i) {
        int x = static_cast<int>(uniform_index(rng, 1, spec.n1));
        int y = static_cast<int>(uniform_index(rng, 1, spec.n2));
        refs.emplace_back(x, y);
    }
    if (refs_out) *refs_out = refs;

    const double scale = static_cast<double>(spec.n1) * static_cast<double>(spec.n2);
    std::vector<Load> cells;
    cells.reserve(static_cast<std::size_t>(spec.n1) * spec.n2);
    for (int x = 1; x <= spec.n1; ++x) {
        for (int y = 1; y <= spec.n2; ++y) {
            double dist;
            if (spec.kind == GenKind::kDiagonal) {
                dist = point_segment_distance(x, y, 1.0, 1.0, spec.n1, spec.n2);
            } else {
                dist = std::numeric_limits<double>::infinity();
                for (auto [rx, ry] : refs)
                    dist = std::min(dist, std::hypot(static_cast<double>(x - rx),
                                                     static_cast<double>(y - ry)));
            }
            const double value = uniform_real01(rng) * scale / (dist + 0.1);
            cells.push_back(static_cast<Load>(std::floor(value + 0.5)));
        }
    }
    return LoadMatrix(spec.n1, spec.n2, std::move(cells));
}

LoadMatrix generate(const GenSpec &spec) {
    if (spec.kind == GenKind::kUniform) return gen_uniform(spec);
    return gen_gravity(spec);
}

LoadMatrix read_matrix(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    auto head = tokens_of(line);
    if (head.size() != 2) throw ParseError("malformed header (want 'n1 n2')", 1);
    const int n1 = parse_dim(head[0], 1), n2 = parse_dim(head[1], 1);
    std::vector<Load> cells;
    cells.reserve(static_cast<std::size_t>(n1) * n2);
    for (int r = 1; r <= n1; ++r) {
        const int lineno = r + 1;
        if (!std::getline(in, line)) throw ParseError("missing row", lineno);
        auto toks = tokens_of(line);
        if (static_cast<int>(toks.size()) != n2)
            throw ParseError("expected " + std::to_string(n2) + " cells, got " +
                                 std::to_string(toks.size()),
                             lineno);
        for (const auto &t : toks) cells.push_back(parse_load(t, lineno));
    }
    int lineno = n1 + 2;
    while (std::getline(in, line)) {
        if (!tokens_of(line).empty()) throw ParseError("unexpected trailing content", lineno);
        ++lineno;
    }
    return LoadMatrix(n1, n2, std::move(cells));
}

LoadMatrix read_matrix(const std::string &path) {
    auto in = open_in(path);
    return read_matrix(in);
}

void write_matrix(const LoadMatrix &matrix, std::ostream &out) {
    out << matrix.n1() << ' ' << matrix.n2() << '\n';
    for (int x = 1; x <= matrix.n1(); ++x) {
        for (int y = 1; y <= matrix.n2(); ++y) {
            if (y > 1) out << ' ';
            out << matrix.at(x, y);
        }
        out << '\n';
    }
}

void write_matrix(const LoadMatrix &matrix, const std::string &path) {
    auto out = open_out(path);
    write_matrix(matrix, out);
}

Partition read_partition(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    auto head = tokens_of(line);
    if (head.size() != 3) throw ParseError("malformed header (want 'n1 n2 m')", 1);
    Partition p;
    p.n1 = parse_dim(head[0], 1);
    p.n2 = parse_dim(head[1], 1);
    const int m = parse_dim(head[2], 1);
    for (int i = 1; i <= m; ++i) {
        const int lineno = i + 1;
        if (!std::getline(in, line)) throw ParseError("missing rectangle", lineno);
        auto toks = tokens_of(line);
        if (toks.size() != 4)
            throw ParseError("expected 'x1 x2 y1 y2'", lineno);
        Rect r{parse_dim(toks[0], lineno), parse_dim(toks[1], lineno),
               parse_dim(toks[2], lineno), parse_dim(toks[3], lineno)};
        if (!r.inside(p.n1, p.n2)) throw ParseError("rect out of bounds", lineno);
        p.rects.push_back(r);
    }
    int lineno = m + 2;
    while (std::getline(in, line)) {
        if (!tokens_of(line).empty()) throw ParseError("unexpected trailing content", lineno);
        ++lineno;
    }
    return p;
}

Partition read_partition(const std::string &path) {
    auto in = open_in(path);
    return read_partition(in);
}

void write_partition(const Partition &p, std::ostream &out) {
    out << p.n1 << ' ' << p.n2 << ' ' << p.m() << '\n';
    for (const Rect &r : p.rects)
        out << r.x1 << ' ' << r.x2 << ' ' << r.y1 << ' ' << r.y2 << '\n';
}

void write_partition(const Partition &p, const std::string &path) {
    auto out = open_out(path);
    write_partition(p, out);
}

}  // namespace rectpart
