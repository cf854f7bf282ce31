#include "mbfreal/linear.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mbfreal {

namespace {

struct Row {
    std::vector<Rational> coeffs;
    Rational rhs;
    std::vector<Rational> lambda;
    int support = 0;
};

// Scales so the first nonzero coefficient has absolute value one.
void normalize(Row& r) {
    for (const auto& c : r.coeffs) {
        if (sgn(c) == 0) continue;
        Rational s = abs(c);
        if (s == 1) return;
        for (auto& x : r.coeffs) x /= s;
        r.rhs /= s;
        for (auto& l : r.lambda)
            if (sgn(l) != 0) l /= s;
        return;
    }
}

bool is_zero_row(const Row& r) {
    for (const auto& c : r.coeffs)
        if (sgn(c) != 0) return false;
    return true;
}

struct CoeffLess {
    bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }
};

}  // namespace

FmResult fourier_motzkin(const std::vector<LinearConstraint>& system, int num_vars, FmStats* stats) {
    const std::size_t m = system.size();
    std::vector<Row> rows;
    rows.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (static_cast<int>(system[k].coeffs.size()) != num_vars)
            throw std::invalid_argument("constraint has wrong number of coefficients");
        Row r{system[k].coeffs, system[k].rhs, std::vector<Rational>(m, 0), 1};
        r.lambda[k] = 1;
        rows.push_back(std::move(r));
    }

    struct Stage {
        int var;
        std::vector<Row> rows;
    };
    std::vector<Stage> stages;
    std::vector<bool> eliminated(num_vars, false);
    FmResult result;

    auto contradiction = [&](const std::vector<Row>& rs) -> const Row* {
        for (const auto& r : rs)
            if (is_zero_row(r) && sgn(r.rhs) > 0) return &r;
        return nullptr;
    };

    for (;;) {
        if (stats) stats->max_constraints = std::max(stats->max_constraints, rows.size());
        if (const Row* bad = contradiction(rows)) {
            result.feasible = false;
            result.multipliers = bad->lambda;
            return result;
        }
        // Pick the variable with the smallest pos*neg product.
        int best = -1;
        long long best_cost = 0;
        for (int v = 0; v < num_vars; ++v) {
            if (eliminated[v]) continue;
            long long pos = 0, neg = 0;
            for (const auto& r : rows) {
                int s = sgn(r.coeffs[v]);
                if (s > 0) ++pos;
                if (s < 0) ++neg;
            }
            long long cost = pos * neg - pos - neg;
            if (best < 0 || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        if (best < 0) break;
        eliminated[best] = true;
        if (stats) ++stats->eliminations;

        std::vector<Row> pos, neg, rest;
        for (auto& r : rows) {
            int s = sgn(r.coeffs[best]);
            if (s > 0)
                pos.push_back(std::move(r));
            else if (s < 0)
                neg.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        Stage stage{best, {}};
        stage.rows.insert(stage.rows.end(), pos.begin(), pos.end());
        stage.rows.insert(stage.rows.end(), neg.begin(), neg.end());
        stages.push_back(std::move(stage));

        std::map<std::vector<Rational>, Row, CoeffLess> uniq;
        auto add = [&](Row r) {
            if (is_zero_row(r)) {
                if (sgn(r.rhs) > 0) uniq.emplace(r.coeffs, std::move(r));
                return;
            }
            normalize(r);
            auto it = uniq.find(r.coeffs);
            if (it == uniq.end()) {
                uniq.emplace(r.coeffs, std::move(r));
            } else if (r.rhs > it->second.rhs || (r.rhs == it->second.rhs && r.support < it->second.support)) {
                it->second = std::move(r);
            }
        };
        for (auto& r : rest) add(std::move(r));
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                Rational a = p.coeffs[best];
                Rational b = -q.coeffs[best];
                Row c;
                c.lambda.resize(m);
                int support = 0;
                for (std::size_t k = 0; k < m; ++k) {
                    c.lambda[k] = b * p.lambda[k] + a * q.lambda[k];
                    if (sgn(c.lambda[k]) != 0) ++support;
                }
                c.support = support;
                c.coeffs.resize(num_vars);
                for (int v = 0; v < num_vars; ++v) c.coeffs[v] = b * p.coeffs[v] + a * q.coeffs[v];
                c.coeffs[best] = 0;
                c.rhs = b * p.rhs + a * q.rhs;
                add(std::move(c));
            }
        }
        rows.clear();
        for (auto& [k, r] : uniq) {
            if (is_zero_row(r) && sgn(r.rhs) <= 0) continue;
            rows.push_back(std::move(r));
        }
    }

    if (const Row* bad = contradiction(rows)) {
        result.feasible = false;
        result.multipliers = bad->lambda;
        return result;
    }

    result.feasible = true;
    std::vector<Rational> x(num_vars, 0);
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        int v = it->var;
        std::optional<Rational> lo, hi;
        for (const auto& r : it->rows) {
            Rational rest = r.rhs;
            for (int u = 0; u < num_vars; ++u)
                if (u != v && sgn(r.coeffs[u]) != 0) rest -= r.coeffs[u] * x[u];
            Rational bound = rest / r.coeffs[v];
            if (sgn(r.coeffs[v]) > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (lo && hi && *lo > *hi) throw std::logic_error("fourier_motzkin: inconsistent back-substitution");
        x[v] = lo ? *lo : (hi ? *hi : Rational(0));
    }
    result.point = std::move(x);
    return result;
}

bool is_farkas_certificate(const std::vector<LinearConstraint>& system, const std::vector<Rational>& multipliers) {
    if (system.empty() || multipliers.size() != system.size()) return false;
    std::size_t nv = system[0].coeffs.size();
    std::vector<Rational> combo(nv, 0);
    Rational rhs = 0;
    for (std::size_t k = 0; k < system.size(); ++k) {
        if (sgn(multipliers[k]) < 0) return false;
        if (sgn(multipliers[k]) == 0) continue;
        if (system[k].coeffs.size() != nv) return false;
        for (std::size_t v = 0; v < nv; ++v) combo[v] += multipliers[k] * system[k].coeffs[v];
        rhs += multipliers[k] * system[k].rhs;
    }
    for (const auto& c : combo)
        if (sgn(c) != 0) return false;
    return sgn(rhs) > 0;
}

bool satisfies(const std::vector<LinearConstraint>& system, const std::vector<Rational>& point) {
    for (const auto& c : system) {
        if (c.coeffs.size() != point.size()) return false;
        Rational lhs = 0;
        for (std::size_t v = 0; v < point.size(); ++v) lhs += c.coeffs[v] * point[v];
        if (lhs < c.rhs) return false;
    }
    return true;
}

std::optional<std::vector<Rational>> find_nonnegative_solution(const std::vector<std::vector<Rational>>& a,
                                                               const std::vector<Rational>& b) {
    const std::size_t rows = a.size();
    if (b.size() != rows) throw std::invalid_argument("simplex: dimension mismatch");
    const std::size_t cols = rows ? a[0].size() : 0;
    // Tableau columns: original, artificial, rhs.
    const std::size_t width = cols + rows + 1;
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(width, 0));
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw std::invalid_argument("simplex: ragged matrix");
        bool flip = sgn(b[i]) < 0;
        for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        t[i][cols + i] = 1;
        t[i][width - 1] = flip ? Rational(-b[i]) : b[i];
        basis[i] = cols + i;
    }
    // Phase-one objective row: minimize the sum of artificials.
    std::vector<Rational> cost(width, 0);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (sgn(t[i][j]) != 0) cost[j] -= t[i][j];
    for (std::size_t i = 0; i < rows; ++i) cost[width - 1] -= t[i][width - 1];

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j + 1 < width; ++j)
            if (sgn(cost[j]) < 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = rows;
        Rational best_ratio;
        for (std::size_t i = 0; i < rows; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rational ratio = t[i][width - 1] / t[i][enter];
            if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) break;  // unbounded cannot happen in phase one
        Rational piv = t[leave][enter];
        for (auto& x : t[leave])
            if (sgn(x) != 0) x /= piv;
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width; ++j)
            if (sgn(t[leave][j]) != 0) nz.push_back(j);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave || sgn(t[i][enter]) == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j : nz) t[i][j] -= f * t[leave][j];
        }
        if (sgn(cost[enter]) != 0) {
            Rational f = cost[enter];
            for (std::size_t j : nz) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
    if (sgn(cost[width - 1]) != 0) return std::nullopt;
    std::vector<Rational> x(cols, 0);
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) x[basis[i]] = t[i][width - 1];
    return x;
}

}  // namespace mbfreal
