#include "homog/microstructure.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace homog {

namespace {

Microstructure from_chi(Grid2D grid, std::vector<std::uint8_t> chi) {
    std::size_t count = 0;
    for (auto v : chi) count += v ? 1 : 0;
    Microstructure m;
    m.grid = grid;
    m.chi1 = std::move(chi);
    m.f1 = static_cast<double>(count) / static_cast<double>(grid.npix());
    return m;
}

Microstructure make_obnosov(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("obnosov: n must be a positive multiple of 4");
    Grid2D g(n, n);
    std::vector<std::uint8_t> chi(g.npix(), 0);
    const int lo = n / 4, hi = 3 * n / 4;  // side exactly n/2, centered
    for (int j = lo; j < hi; ++j)
        for (int i = lo; i < hi; ++i) chi[g.at(i, j)] = 1;
    return from_chi(g, std::move(chi));
}

Microstructure make_checkerboard(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("checkerboard: n must be even and >= 2");
    Grid2D g(n, n);
    std::vector<std::uint8_t> chi(g.npix(), 0);
    const int h = n / 2;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            chi[g.at(i, j)] = ((i < h) == (j < h)) ? 1 : 0;
    return from_chi(g, std::move(chi));
}

std::size_t disk_count(int n, double r2) {
    // pixel centers strictly inside any of the four quarter-point disks
    static const std::array<std::pair<double, double>, 4> centers = {
        {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}}};
    std::size_t count = 0;
    for (int j = 0; j < n; ++j) {
        const double y = (j + 0.5) / n;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            for (auto [cx, cy] : centers) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy < r2) {
                    ++count;
                    break;
                }
            }
        }
    }
    return count;
}

Microstructure make_four_disks(int n) {
    if (n < 8) throw std::invalid_argument("four_disks: n must be >= 8");
    const auto target = static_cast<std::size_t>(n) * n / 2;
    // count(r) is nondecreasing in r; bisect, then keep the closer endpoint
    double lo = 0.0, hi = 0.25;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (disk_count(n, mid * mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    const std::size_t clo = disk_count(n, lo * lo);
    const std::size_t chi_ = disk_count(n, hi * hi);
    const double r = (target - clo <= chi_ - target) ? lo : hi;
    const double r2 = r * r;

    Grid2D g(n, n);
    std::vector<std::uint8_t> chi(g.npix(), 0);
    static const std::array<std::pair<double, double>, 4> centers = {
        {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}}};
    for (int j = 0; j < n; ++j) {
        const double y = (j + 0.5) / n;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            for (auto [cx, cy] : centers) {
                const double dx = x - cx, dy = y - cy;
                if (dx * dx + dy * dy < r2) {
                    chi[g.at(i, j)] = 1;
                    break;
                }
            }
        }
    }
    return from_chi(g, std::move(chi));
}

}  // namespace

Microstructure generate(MicroKind kind, int n) {
    switch (kind) {
        case MicroKind::obnosov: return make_obnosov(n);
        case MicroKind::checkerboard: return make_checkerboard(n);
        case MicroKind::four_disks: return make_four_disks(n);
    }
    throw std::invalid_argument("generate: unknown kind");
}

double volume_fraction(const Microstructure& m) { return m.f1; }

void save_pgm(const Microstructure& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_pgm: cannot open " + path);
    out << "P5\n" << m.grid.n1 << " " << m.grid.n2 << "\n255\n";
    std::vector<char> row(m.grid.n1);
    for (int j = 0; j < m.grid.n2; ++j) {
        for (int i = 0; i < m.grid.n1; ++i)
            row[i] = m.chi1[m.grid.at(i, j)] ? static_cast<char>(255) : 0;
        out.write(row.data(), row.size());
    }
    if (!out) throw std::runtime_error("save_pgm: write failed for " + path);
}

namespace {

// PGM header token reader: skips whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            break;
        }
    }
    while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
    return tok;
}

long parse_dim(const std::string& tok) {
    if (tok.empty()) throw std::runtime_error("load_pgm: truncated header");
    for (char c : tok)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::runtime_error("load_pgm: malformed header token '" + tok + "'");
    if (tok.size() > 9) throw std::runtime_error("load_pgm: dimension overflow");
    return std::stol(tok);
}

}  // namespace

Microstructure load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_pgm: cannot open " + path);
    if (next_token(in) != "P5") throw std::runtime_error("load_pgm: not a binary PGM (P5)");
    const long w = parse_dim(next_token(in));
    const long h = parse_dim(next_token(in));
    const long maxval = parse_dim(next_token(in));
    if (maxval != 255) throw std::runtime_error("load_pgm: maxval must be 255");
    if (w < 2 || h < 2 || w > 65535 || h > 65535 || w * h > (1L << 26))
        throw std::runtime_error("load_pgm: dimension overflow");
    Grid2D g(static_cast<int>(w), static_cast<int>(h));
    std::vector<std::uint8_t> raw(g.npix());
    in.read(reinterpret_cast<char*>(raw.data()), raw.size());
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw std::runtime_error("load_pgm: truncated pixel data");
    std::vector<std::uint8_t> chi(g.npix());
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            chi[g.at(i, j)] = raw[static_cast<std::size_t>(j) * g.n1 + i] >= 128 ? 1 : 0;
    return from_chi(g, std::move(chi));
}

RealVectorField2D scale_by_phase(const Microstructure& m, const RealVectorField2D& f,
                                 double m1, double m2) {
    if (!(f.grid == m.grid)) throw std::invalid_argument("scale_by_phase: grid mismatch");
    RealVectorField2D out(f.grid);
    for (std::size_t k = 0; k < f.x.size(); ++k) {
        const double s = m.chi1[k] ? m1 : m2;
        out.x[k] = s * f.x[k];
        out.y[k] = s * f.y[k];
    }
    return out;
}

}  // namespace homog
