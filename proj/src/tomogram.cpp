#include "tomo/tomogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "tomo/errors.hpp"

namespace tomo {

std::string family_name(Family f) {
    switch (f) {
        case Family::symplectic: return "symplectic";
        case Family::homodyne: return "homodyne";
        case Family::center_of_mass: return "com";
        case Family::two_mode: return "two_mode";
        case Family::quadric: return "quadric";
        case Family::multipartite_quadric: return "quadric2";
        case Family::deformed: return "deformed";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "symplectic") return Family::symplectic;
    if (name == "homodyne") return Family::homodyne;
    if (name == "com") return Family::center_of_mass;
    if (name == "two_mode") return Family::two_mode;
    if (name == "quadric") return Family::quadric;
    if (name == "quadric2") return Family::multipartite_quadric;
    if (name == "deformed") return Family::deformed;
    throw ConfigError("unknown tomogram family: " + name);
}

std::size_t Tomogram::find_param(const std::vector<double>& pt, double tol) const {
    for (std::size_t p = 0; p < params.size(); ++p) {
        if (params[p].size() != pt.size()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < pt.size(); ++i)
            if (std::abs(params[p][i] - pt[i]) > tol) { ok = false; break; }
        if (ok) return p;
    }
    std::ostringstream os;
    os << "tomogram has no parameter point (";
    for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? ", " : "") << pt[i];
    os << ")";
    throw MissingParameterPoint(os.str());
}

double Tomogram::row_mass(std::size_t p) const {
    double dv = 1.0;
    for (const auto& a : X_axes) dv *= a.step();
    const double* r = row(p);
    double acc = 0.0;
    for (std::size_t k = 0; k < bins_per_param(); ++k) acc += r[k];
    return acc * dv;
}

void Tomogram::infer_param_axes() {
    if (params.empty()) return;
    const std::size_t width = params[0].size();
    std::vector<std::vector<double>> uniq(width);
    for (std::size_t c = 0; c < width; ++c) {
        std::vector<double> vals;
        for (const auto& pt : params) vals.push_back(pt[c]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        uniq[c] = std::move(vals);
    }
    std::size_t prod = 1;
    for (const auto& u : uniq) prod *= u.size();
    if (prod != params.size()) return;
    std::vector<Axis> axes;
    for (const auto& u : uniq) {
        if (u.size() < 2) return;
        const double h = u[1] - u[0];
        for (std::size_t i = 1; i < u.size(); ++i)
            if (std::abs(u[i] - u[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) return;
        axes.emplace_back(u.front(), u.back(), static_cast<int>(u.size()));
    }
    // confirm row ordering is the row-major product order
    std::vector<int> idx(width, 0);
    for (std::size_t p = 0; p < params.size(); ++p) {
        for (std::size_t c = 0; c < width; ++c)
            if (std::abs(params[p][c] - uniq[c][idx[c]]) > 1e-9) return;
        for (int c = static_cast<int>(width) - 1; c >= 0; --c) {
            if (++idx[c] < static_cast<int>(uniq[c].size())) break;
            idx[c] = 0;
        }
    }
    param_axes = std::move(axes);
}

const std::vector<Axis>& Tomogram::require_param_axes() const {
    if (!param_axes)
        throw GridTooSmall("tomogram parameters do not form a uniform grid");
    return *param_axes;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const Tomogram& t) {
    os << "family";
    if (t.thick()) os << ",window";
    for (const auto& n : t.param_names) os << "," << n;
    if (t.X_axes.size() == 1) {
        os << ",X";
    } else {
        for (std::size_t i = 0; i < t.X_axes.size(); ++i) os << ",X" << (i + 1);
    }
    os << ",value\n";

    const std::string fam = family_name(t.family);
    const std::string win = t.thick() ? t.window->describe() : std::string();
    const std::size_t bins = t.bins_per_param();
    const int nx2 = t.X_axes.size() == 2 ? t.X_axes[1].count : 1;
    for (std::size_t p = 0; p < t.params.size(); ++p) {
        std::string prefix = fam;
        if (t.thick()) prefix += "," + win;
        for (double v : t.params[p]) prefix += "," + format_double(v);
        const double* r = t.row(p);
        for (std::size_t k = 0; k < bins; ++k) {
            os << prefix;
            if (t.X_axes.size() == 1) {
                os << "," << format_double(t.X_axes[0].at(static_cast<int>(k)));
            } else {
                os << "," << format_double(t.X_axes[0].at(static_cast<int>(k) / nx2));
                os << "," << format_double(t.X_axes[1].at(static_cast<int>(k) % nx2));
            }
            os << "," << format_double(r[k]) << "\n";
        }
    }
}

void write_csv_file(const std::string& path, const Tomogram& t) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open for writing: " + path);
    write_csv(os, t);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') { out.push_back(cur); cur.clear(); }
        else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

WindowSpec parse_window_string(const std::string& s) {
    if (s == "delta") return WindowSpec::delta();
    auto paren = s.find('(');
    if (paren == std::string::npos) throw ConfigError("bad window column: " + s);
    const std::string kind = s.substr(0, paren);
    auto eq = s.find('=', paren);
    const double v = std::stod(s.substr(eq + 1));
    if (kind == "gaussian") return WindowSpec::gaussian(v);
    if (kind == "rect") return WindowSpec::rect(v);
    throw ConfigError("bad window column: " + s);
}

Axis axis_from_sorted_unique(const std::vector<double>& u, const char* what) {
    if (u.size() < 2) throw ConfigError(std::string("csv: degenerate ") + what + " grid");
    const double h = u[1] - u[0];
    for (std::size_t i = 1; i < u.size(); ++i)
        if (std::abs(u[i] - u[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigError(std::string("csv: non-uniform ") + what + " grid");
    return Axis(u.front(), u.back(), static_cast<int>(u.size()));
}

} // namespace

Tomogram read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("csv: empty input");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "family" || header.back() != "value")
        throw ConfigError("csv: bad header");

    const bool has_window = header.size() > 1 && header[1] == "window";
    int nx_cols = 0;
    for (const auto& h : header)
        if (h == "X" || h == "X1" || h == "X2") ++nx_cols;
    if (nx_cols < 1 || nx_cols > 2) throw ConfigError("csv: bad X columns");
    const std::size_t first_param = has_window ? 2 : 1;
    const std::size_t n_params = header.size() - first_param - nx_cols - 1;

    Tomogram t;
    for (std::size_t i = 0; i < n_params; ++i)
        t.param_names.push_back(header[first_param + i]);

    bool first_row = true;
    std::vector<std::vector<double>> xcols(nx_cols);
    std::vector<double> vals;
    std::vector<std::vector<double>> tuples;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size()) throw ConfigError("csv: ragged row");
        if (first_row) {
            t.family = family_from_name(cells[0]);
            if (has_window) t.window = parse_window_string(cells[1]);
            first_row = false;
        }
        std::vector<double> tuple(n_params);
        for (std::size_t i = 0; i < n_params; ++i)
            tuple[i] = std::stod(cells[first_param + i]);
        if (tuples.empty() || tuple != tuples.back()) tuples.push_back(tuple);
        for (int i = 0; i < nx_cols; ++i)
            xcols[i].push_back(std::stod(cells[first_param + n_params + i]));
        vals.push_back(std::stod(cells.back()));
    }
    if (vals.empty()) throw ConfigError("csv: no data rows");

    t.params = std::move(tuples);
    for (int i = 0; i < nx_cols; ++i) {
        std::vector<double> u = xcols[i];
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        t.X_axes.push_back(axis_from_sorted_unique(u, "X"));
    }
    std::size_t bins = 1;
    for (const auto& a : t.X_axes) bins *= a.count;
    if (t.params.size() * bins != vals.size())
        throw ConfigError("csv: row count does not match param x X grid");
    t.values = std::move(vals);
    t.binned = !t.thick();
    t.infer_param_axes();
    return t;
}

Tomogram read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open: " + path);
    return read_csv(is);
}

} // namespace tomo
