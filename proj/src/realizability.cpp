#include "mbfreal/realizability.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <stdexcept>

namespace mbfreal {

std::string class_name(RealizationClass c) {
    switch (c) {
        case RealizationClass::K: return "K";
        case RealizationClass::Sigma: return "sigma";
        case RealizationClass::PiSigma: return "pisigma";
        case RealizationClass::SigmaPiSigma: return "sigmapisigma";
    }
    return "?";
}

RealizationClass parse_realization_class(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != '-' && c != '_') t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (t == "k") return RealizationClass::K;
    if (t == "sigma") return RealizationClass::Sigma;
    if (t == "pisigma") return RealizationClass::PiSigma;
    if (t == "sigmapisigma") return RealizationClass::SigmaPiSigma;
    throw InputError("unknown class: " + text);
}

std::optional<StructureClass> structure_class(RealizationClass c) {
    switch (c) {
        case RealizationClass::K: return std::nullopt;
        case RealizationClass::Sigma: return StructureClass::Sigma;
        case RealizationClass::PiSigma: return StructureClass::PiSigma;
        case RealizationClass::SigmaPiSigma: return StructureClass::SigmaPiSigma;
    }
    return std::nullopt;
}

std::string verdict_name(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Realizable: return "Realizable";
        case Verdict::Kind::NotRealizable: return "NotRealizable";
        case Verdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

int tuple_arity(const OrderedTuple& tuple) {
    if (tuple.empty()) throw std::invalid_argument("empty tuple");
    validate_tuple(tuple);
    return tuple[0].arity();
}

std::vector<std::uint32_t> minimal_true(const MbfFunction& f) {
    std::vector<std::uint32_t> out;
    for (auto c : f.true_corners()) {
        bool minimal = true;
        for (int i = 0; i < f.arity() && minimal; ++i)
            if (((c >> i) & 1u) && f(c & ~(1u << i))) minimal = false;
        if (minimal) out.push_back(c);
    }
    return out;
}

std::vector<std::uint32_t> maximal_false(const MbfFunction& f) {
    std::vector<std::uint32_t> out;
    for (auto c : f.false_corners()) {
        bool maximal = true;
        for (int i = 0; i < f.arity() && maximal; ++i)
            if (!((c >> i) & 1u) && !f(c | (1u << i))) maximal = false;
        if (maximal) out.push_back(c);
    }
    return out;
}

std::vector<Rational> lambda_values(const InteractionStructure& s, const PhiAssignment& phi) {
    std::uint32_t size = 1u << s.arity();
    std::vector<Rational> out(size);
    for (std::uint32_t c = 0; c < size; ++c) out[c] = s.evaluate(phi.values(c));
    return out;
}

// Keeps each candidate threshold that is strictly inside its gap and above the next one,
// otherwise takes the midpoint of the admissible interval.
std::optional<std::vector<Rational>> fit_thresholds(const OrderedTuple& tuple, const std::vector<Rational>& values,
                                                    const std::vector<Rational>* candidates = nullptr) {
    std::size_t k = tuple.size();
    std::vector<Rational> theta(k);
    for (std::size_t jj = k; jj-- > 0;) {
        const auto& f = tuple[jj];
        Rational lower = 0;
        std::optional<Rational> upper;
        for (std::uint32_t c = 0; c < f.corner_count(); ++c) {
            if (f(c)) {
                if (!upper || values[c] < *upper) upper = values[c];
            } else if (values[c] > lower) {
                lower = values[c];
            }
        }
        if (jj + 1 < k && theta[jj + 1] > lower) lower = theta[jj + 1];
        if (upper && !(lower < *upper)) return std::nullopt;
        if (candidates && (*candidates)[jj] > lower && (!upper || (*candidates)[jj] < *upper)) {
            theta[jj] = (*candidates)[jj];
        } else {
            theta[jj] = upper ? midpoint(lower, *upper) : Rational(lower + 1);
        }
    }
    return theta;
}

std::uint32_t full_mask(int n) { return (1u << n) - 1; }

InteractionStructure sigma_structure(int n, std::uint32_t mask) {
    Block b;
    for (int i = 1; i <= n; ++i)
        if (mask & (1u << (i - 1))) b.push_back(i);
    return InteractionStructure(n, {Group{b}});
}

}  // namespace

bool verify_witness(const OrderedTuple& tuple, const Witness& w) {
    int n = tuple_arity(tuple);
    if (w.structure.arity() != n || w.phi.arity() != n) throw ArityMismatch("witness arity differs from tuple");
    if (w.thresholds.size() != tuple.size()) throw ArityMismatch("witness threshold count differs from tuple");
    try {
        w.phi.validate();
    } catch (const std::invalid_argument& e) {
        throw InvalidWitness(e.what());
    }
    std::uint32_t size = 1u << n;
    bool ok = true;
    for (std::uint32_t c = 0; c < size; ++c) {
        Rational v = w.structure.evaluate(w.phi.values(c));
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            if (v == w.thresholds[j])
                throw InvalidWitness("corner " + Corner{n, c}.str() + " lies on threshold " +
                                     format_rational(w.thresholds[j]));
            if ((v > w.thresholds[j]) != tuple[j](c)) ok = false;
        }
    }
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (!(w.thresholds[j] > 0)) ok = false;
        if (j + 1 < tuple.size() && !(w.thresholds[j] > w.thresholds[j + 1])) ok = false;
    }
    return ok;
}

bool verify_k_witness(const OrderedTuple& tuple, const KWitness& w) {
    int n = tuple_arity(tuple);
    if (w.n != n || w.values.size() != (std::size_t{1} << n) || w.thresholds.size() != tuple.size()) return false;
    for (std::uint32_t c = 0; c < w.values.size(); ++c)
        for (int i = 0; i < n; ++i)
            if (!((c >> i) & 1u) && w.values[c] > w.values[c | (1u << i)]) return false;
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (j + 1 < tuple.size() && !(w.thresholds[j] > w.thresholds[j + 1])) return false;
        for (std::uint32_t c = 0; c < w.values.size(); ++c) {
            if (w.values[c] == w.thresholds[j]) return false;
            if ((w.values[c] > w.thresholds[j]) != tuple[j](c)) return false;
        }
    }
    return true;
}

KWitness realize_k(const OrderedTuple& tuple) {
    int n = tuple_arity(tuple);
    KWitness w;
    w.n = n;
    w.values.assign(std::size_t{1} << n, Rational(0));
    for (std::uint32_t c = 0; c < w.values.size(); ++c)
        for (const auto& f : tuple)
            if (f(c)) w.values[c] += 1;
    long long b = static_cast<long long>(tuple.size());
    for (long long j = 1; j <= b; ++j) w.thresholds.push_back(Rational(static_cast<long>(2 * (b - j) + 1), 2L));
    return w;
}

std::vector<LinearConstraint> sigma_system(const OrderedTuple& tuple, std::uint32_t mask,
                                           std::vector<std::string>* labels) {
    int n = tuple_arity(tuple);
    std::vector<int> vars;
    for (int i = 1; i <= n; ++i)
        if (mask & (1u << (i - 1))) vars.push_back(i);
    int nv = static_cast<int>(2 * vars.size() + tuple.size());
    auto theta = [&](std::size_t j) { return static_cast<int>(2 * vars.size() + j); };
    std::vector<LinearConstraint> sys;
    auto row = [&](std::string label) -> LinearConstraint& {
        sys.push_back(LinearConstraint{std::vector<Rational>(nv, 0), Rational(1)});
        if (labels) labels->push_back(std::move(label));
        return sys.back();
    };
    for (std::size_t p = 0; p < vars.size(); ++p) {
        std::string i = std::to_string(vars[p]);
        row("l" + i + " >= 1").coeffs[2 * p] = 1;
        auto& r = row("u" + i + " - l" + i + " >= 1");
        r.coeffs[2 * p + 1] = 1;
        r.coeffs[2 * p] = -1;
    }
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        std::string tj = "t" + std::to_string(j + 1);
        if (j + 1 < tuple.size()) {
            auto& r = row(tj + " - t" + std::to_string(j + 2) + " >= 1");
            r.coeffs[theta(j)] = 1;
            r.coeffs[theta(j + 1)] = -1;
        } else {
            row(tj + " >= 1").coeffs[theta(j)] = 1;
        }
    }
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        std::string tj = "t" + std::to_string(j + 1);
        for (auto c : minimal_true(tuple[j])) {
            auto& r = row("L(" + Corner{n, c}.str() + ") - " + tj + " >= 1");
            for (std::size_t p = 0; p < vars.size(); ++p) r.coeffs[2 * p + ((c >> (vars[p] - 1)) & 1u)] = 1;
            r.coeffs[theta(j)] = -1;
        }
        for (auto c : maximal_false(tuple[j])) {
            auto& r = row(tj + " - L(" + Corner{n, c}.str() + ") >= 1");
            for (std::size_t p = 0; p < vars.size(); ++p) r.coeffs[2 * p + ((c >> (vars[p] - 1)) & 1u)] = -1;
            r.coeffs[theta(j)] = 1;
        }
    }
    return sys;
}

Verdict check_sigma(const OrderedTuple& tuple) {
    int n = tuple_arity(tuple);
    if (n < 1) throw ArityMismatch("check_sigma needs at least one input");
    if (n > 5) throw ArityMismatch("check_sigma is limited to arity 5");
    Certificate exhaustion;
    exhaustion.kind = Certificate::Kind::Exhaustion;
    exhaustion.cls = StructureClass::Sigma;
    // Full support first: any Sigma realization extends to one that uses every variable.
    for (std::uint32_t mask = full_mask(n); mask >= 1; --mask) {
        std::vector<std::string> labels;
        auto sys = sigma_system(tuple, mask, &labels);
        std::size_t nvars = sys[0].coeffs.size();
        auto res = fourier_motzkin(sys, static_cast<int>(nvars));
        if (res.feasible) {
            Witness w;
            w.structure = sigma_structure(n, mask);
            w.phi = PhiAssignment::uniform(n, 1, 2);
            std::size_t p = 0;
            for (int i = 1; i <= n; ++i) {
                if (!(mask & (1u << (i - 1)))) continue;
                w.phi.low[i - 1] = res.point[2 * p];
                w.phi.high[i - 1] = res.point[2 * p + 1];
                ++p;
            }
            for (std::size_t j = 0; j < tuple.size(); ++j) w.thresholds.push_back(res.point[2 * p + j]);
            if (!verify_witness(tuple, w)) throw std::logic_error("check_sigma: reconstructed witness fails");
            Verdict v;
            v.kind = Verdict::Kind::Realizable;
            v.witness = std::move(w);
            return v;
        }
        Certificate c;
        c.kind = Certificate::Kind::Farkas;
        c.structure = sigma_structure(n, mask);
        for (std::size_t k = 0; k < res.multipliers.size(); ++k) {
            if (sgn(res.multipliers[k]) == 0) continue;
            c.rows.push_back(k);
            c.multipliers.push_back(res.multipliers[k]);
            c.labels.push_back(labels[k]);
        }
        exhaustion.children.push_back(std::move(c));
    }
    Verdict v;
    v.kind = Verdict::Kind::NotRealizable;
    v.certificate = std::move(exhaustion);
    return v;
}

std::vector<int> incomparable_directions(const MbfFunction& f, const MbfFunction& g) {
    if (f.arity() != g.arity()) throw ArityMismatch("incomparable_directions: arities differ");
    std::vector<int> out;
    for (int l = 1; l <= f.arity(); ++l) {
        auto fc = restrict_and_collapse(f, l, Side::Ceiling);
        auto gf = restrict_and_collapse(g, l, Side::Floor);
        if (!implies(fc, gf) && !implies(gf, fc)) out.push_back(l);
    }
    return out;
}

namespace {

std::optional<Certificate> direction_certificate(const OrderedTuple& tuple, std::size_t a, std::size_t b, int l) {
    const auto& f = tuple[a];
    const auto& g = tuple[b];
    int n = f.arity();
    std::uint32_t e = 1u << (l - 1);
    std::optional<std::uint32_t> y, w;
    for (std::uint32_t c = 0; c < (1u << (n - 1)); ++c) {
        std::uint32_t v = insert_bit(c, l, false);
        if (!y && !g(v) && f(v | e)) y = v;
        if (!w && g(v) && !f(v | e)) w = v;
    }
    if (!y || !w) return std::nullopt;
    Certificate cert;
    cert.kind = Certificate::Kind::Direction;
    cert.first = a;
    cert.second = b;
    cert.direction = l;
    cert.y = *y;
    cert.w = *w;
    return cert;
}

}  // namespace

std::optional<Certificate> necessary_condition(const OrderedTuple& tuple, const InteractionStructure& s) {
    int n = tuple_arity(tuple);
    if (s.arity() != n) throw ArityMismatch("necessary_condition: structure arity");
    for (int l = 1; l <= n; ++l) {
        if (!has_factor(s, l) && !has_simple_term(s, l)) continue;
        for (std::size_t a = 0; a < tuple.size(); ++a)
            for (std::size_t b = a + 1; b < tuple.size(); ++b)
                if (auto c = direction_certificate(tuple, a, b, l)) {
                    c->structure = s;
                    return c;
                }
    }
    return std::nullopt;
}

namespace {

using PolyMap = std::map<Monomial, Rational>;

PolyMap poly_mul(const PolyMap& a, const PolyMap& b) {
    PolyMap out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m{ma.first | mb.first, ma.second | mb.second};
            out[m] += ca * cb;
        }
    return out;
}

PolyMap corner_polynomial(const InteractionStructure& s, std::uint32_t corner) {
    PolyMap total;
    for (const auto& g : s.groups()) {
        PolyMap prod{{Monomial{0, 0}, Rational(1)}};
        for (const auto& b : g) {
            PolyMap sum;
            for (int v : b) {
                std::uint32_t bit = 1u << (v - 1);
                Monomial m = ((corner >> (v - 1)) & 1u) ? Monomial{0, bit} : Monomial{bit, 0};
                sum[m] += 1;
            }
            prod = poly_mul(prod, sum);
        }
        for (const auto& [m, c] : prod) total[m] += c;
    }
    return total;
}

Polynomial to_sparse(const PolyMap& p) {
    Polynomial out;
    for (const auto& [m, c] : p)
        if (sgn(c) != 0) out.emplace_back(m, c);
    return out;
}

std::string fact_label(std::uint32_t set, std::uint32_t diff_part, int n) {
    std::string out;
    for (int i = 1; i <= n; ++i) {
        std::uint32_t bit = 1u << (i - 1);
        if (!(set & bit)) continue;
        if (!out.empty()) out += "*";
        std::string s = std::to_string(i);
        out += (diff_part & bit) ? "(u" + s + "-l" + s + ")" : "l" + s;
    }
    return out + " > 0";
}

}  // namespace

PolynomialSystem monomial_system(const OrderedTuple& tuple, const InteractionStructure& s) {
    int n = tuple_arity(tuple);
    if (s.arity() != n) throw ArityMismatch("monomial_system: structure arity");
    PolynomialSystem sys;
    std::vector<PolyMap> lam(std::size_t{1} << n);
    for (std::uint32_t c = 0; c < lam.size(); ++c) lam[c] = corner_polynomial(s, c);
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        const auto& f = tuple[j];
        for (auto v : f.true_corners())
            for (auto w : f.false_corners()) {
                if (corner_leq(w, v)) continue;
                PolyMap d = lam[v];
                for (const auto& [m, c] : lam[w]) d[m] -= c;
                sys.rows.push_back(to_sparse(d));
                sys.labels.push_back("f" + std::to_string(j + 1) + ": L(" + Corner{n, v}.str() + ") > L(" +
                                     Corner{n, w}.str() + ")");
            }
    }
    std::uint32_t support = s.support();
    int degree = s.degree();
    for (std::uint32_t set = 1; set <= support; ++set) {
        if ((set & ~support) || std::popcount(set) > degree) continue;
        // diff_part selects the variables contributing (u_i - l_i) instead of l_i.
        for (std::uint32_t diff_part = set;; diff_part = (diff_part - 1) & set) {
            PolyMap p;
            std::uint32_t base_l = set & ~diff_part;
            for (std::uint32_t r = diff_part;; r = (r - 1) & diff_part) {
                int sign = (std::popcount(diff_part & ~r) % 2) ? -1 : 1;
                p[Monomial{base_l | (diff_part & ~r), r}] += sign;
                if (r == 0) break;
            }
            sys.rows.push_back(to_sparse(p));
            sys.labels.push_back(fact_label(set, diff_part, n));
            if (diff_part == 0) break;
        }
    }
    return sys;
}

std::optional<Certificate> monomial_certificate(const OrderedTuple& tuple, const InteractionStructure& s) {
    auto sys = monomial_system(tuple, s);
    if (sys.rows.empty()) return std::nullopt;
    std::map<Monomial, std::size_t> index;
    for (const auto& r : sys.rows)
        for (const auto& [m, c] : r) index.emplace(m, 0);
    std::size_t k = 0;
    for (auto& [m, i] : index) i = k++;
    std::size_t cols = sys.rows.size();
    std::vector<std::vector<Rational>> a(index.size() + 1, std::vector<Rational>(cols, 0));
    for (std::size_t col = 0; col < cols; ++col) {
        for (const auto& [m, c] : sys.rows[col]) a[index[m]][col] = c;
        a[index.size()][col] = 1;
    }
    std::vector<Rational> b(index.size() + 1, 0);
    b.back() = 1;
    auto sol = find_nonnegative_solution(a, b);
    if (!sol) return std::nullopt;
    Certificate cert;
    cert.kind = Certificate::Kind::Farkas;
    cert.monomial = true;
    cert.structure = s;
    for (std::size_t col = 0; col < cols; ++col) {
        if (sgn((*sol)[col]) == 0) continue;
        cert.rows.push_back(col);
        cert.multipliers.push_back((*sol)[col]);
        cert.labels.push_back(sys.labels[col]);
    }
    return cert;
}

std::vector<Rational> default_grid() {
    return {Rational(3, 2), Rational(2), Rational(3), Rational(31, 10),
            Rational(4),    Rational(41, 10), Rational(5), Rational(6)};
}

std::optional<Witness> search_witness(const OrderedTuple& tuple, const InteractionStructure& s,
                                      const std::vector<Rational>& grid) {
    int n = tuple_arity(tuple);
    if (s.arity() != n) throw ArityMismatch("search_witness: structure arity");
    std::vector<int> vars;
    for (int i = 1; i <= n; ++i)
        if (s.support() & (1u << (i - 1))) vars.push_back(i);
    for (const auto& x : grid)
        if (!(x > 1)) throw std::invalid_argument("search grid values must exceed 1");

    std::vector<std::vector<std::uint32_t>> mins, maxs;
    std::vector<std::uint32_t> probe;
    for (const auto& f : tuple) {
        mins.push_back(minimal_true(f));
        maxs.push_back(maximal_false(f));
        probe.insert(probe.end(), mins.back().begin(), mins.back().end());
        probe.insert(probe.end(), maxs.back().begin(), maxs.back().end());
    }
    std::sort(probe.begin(), probe.end());
    probe.erase(std::unique(probe.begin(), probe.end()), probe.end());

    PhiAssignment phi = PhiAssignment::uniform(n, 1, 2);
    std::vector<std::size_t> idx(vars.size(), 0);
    std::vector<Rational> values(std::size_t{1} << n);
    for (;;) {
        for (std::size_t p = 0; p < vars.size(); ++p) phi.high[vars[p] - 1] = grid[idx[p]];
        for (auto c : probe) values[c] = s.evaluate(phi.values(c));
        bool ok = true;
        for (std::size_t j = 0; j < tuple.size() && ok; ++j)
            for (auto t : mins[j])
                for (auto f : maxs[j])
                    if (!(values[t] > values[f])) ok = false;
        if (ok) {
            auto all = lambda_values(s, phi);
            if (auto th = fit_thresholds(tuple, all)) {
                Witness w{s, phi, *th};
                if (verify_witness(tuple, w)) return w;
            }
        }
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == grid.size()) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return std::nullopt;
}

namespace {

std::optional<OrderedTuple> collapse_tuple(const OrderedTuple& tuple, int l, Side side) {
    OrderedTuple out;
    for (const auto& f : tuple) out.push_back(restrict_and_collapse(f, l, side));
    return out;
}

std::optional<InteractionStructure> collapsed_shape(const InteractionStructure& s, int l, Side side) {
    try {
        return collapse_structure(s, l, side, PhiAssignment::uniform(s.arity(), 1, 2)).structure;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace

std::optional<Certificate> collapse_prune(const OrderedTuple& tuple, const InteractionStructure& s) {
    int n = tuple_arity(tuple);
    if (n < 2) return std::nullopt;
    for (int l = 1; l <= n; ++l) {
        for (Side side : {Side::Floor, Side::Ceiling}) {
            auto sub = collapse_tuple(tuple, l, side);
            if (!sub) continue;
            auto shape = collapsed_shape(s, l, side);
            if (!shape) continue;
            auto inner = necessary_condition(*sub, *shape);
            if (!inner) inner = monomial_certificate(*sub, *shape);
            if (!inner) continue;
            Certificate c;
            c.kind = Certificate::Kind::Collapse;
            c.structure = s;
            c.direction = l;
            c.side = side;
            c.children.push_back(std::move(*inner));
            return c;
        }
    }
    return std::nullopt;
}

Verdict check_class(const OrderedTuple& tuple, RealizationClass cls, const CheckOptions& options) {
    int n = tuple_arity(tuple);
    if (cls == RealizationClass::K) {
        Verdict v;
        v.kind = Verdict::Kind::Realizable;
        v.k_witness = realize_k(tuple);
        return v;
    }
    if (n < 1) throw ArityMismatch("structure classes need at least one input");
    Verdict sigma = check_sigma(tuple);
    if (cls == RealizationClass::Sigma) return sigma;

    if (n > 4) throw ArityMismatch("product classes are limited to arity 4");
    StructureClass sc = *structure_class(cls);
    if (sigma.kind == Verdict::Kind::Realizable && sigma.witness->structure.in_class(sc)) return sigma;

    Certificate exhaustion;
    exhaustion.kind = Certificate::Kind::Exhaustion;
    exhaustion.cls = sc;
    std::vector<std::string> open;
    for (const auto& s : enumerate_structures(n, sc)) {
        std::optional<Certificate> c = necessary_condition(tuple, s);
        if (!c && n >= options.collapse_from_arity) c = collapse_prune(tuple, s);
        if (!c) c = monomial_certificate(tuple, s);
        if (c) {
            exhaustion.children.push_back(std::move(*c));
            continue;
        }
        if (auto w = search_witness(tuple, s, options.grid)) {
            Verdict v;
            v.kind = Verdict::Kind::Realizable;
            v.witness = std::move(*w);
            return v;
        }
        open.push_back(s.str());
    }
    Verdict v;
    if (open.empty()) {
        v.kind = Verdict::Kind::NotRealizable;
        v.certificate = std::move(exhaustion);
    } else {
        v.kind = Verdict::Kind::Unknown;
        v.diagnostics = "unresolved structures:";
        for (const auto& s : open) v.diagnostics += " " + s;
    }
    return v;
}

namespace {

bool replay_farkas(const OrderedTuple& tuple, const Certificate& cert) {
    if (!cert.structure || cert.rows.empty() || cert.rows.size() != cert.multipliers.size()) return false;
    for (const auto& m : cert.multipliers)
        if (!(m > 0)) return false;
    const auto& s = *cert.structure;
    if (!cert.monomial) {
        if (s.tag() != StructureClass::Sigma) return false;
        auto sys = sigma_system(tuple, s.support());
        std::vector<Rational> lambda(sys.size(), 0);
        for (std::size_t k = 0; k < cert.rows.size(); ++k) {
            if (cert.rows[k] >= sys.size()) return false;
            lambda[cert.rows[k]] = cert.multipliers[k];
        }
        return is_farkas_certificate(sys, lambda);
    }
    auto sys = monomial_system(tuple, s);
    PolyMap total;
    for (std::size_t k = 0; k < cert.rows.size(); ++k) {
        if (cert.rows[k] >= sys.rows.size()) return false;
        for (const auto& [m, c] : sys.rows[cert.rows[k]]) total[m] += cert.multipliers[k] * c;
    }
    for (const auto& [m, c] : total)
        if (sgn(c) != 0) return false;
    return true;
}

bool replay_direction(const OrderedTuple& tuple, const Certificate& cert) {
    if (!cert.structure) return false;
    int n = tuple[0].arity();
    int l = cert.direction;
    if (l < 1 || l > n || cert.first >= cert.second || cert.second >= tuple.size()) return false;
    if (!has_factor(*cert.structure, l) && !has_simple_term(*cert.structure, l)) return false;
    std::uint32_t e = 1u << (l - 1);
    std::uint32_t size = 1u << n;
    if (cert.y >= size || cert.w >= size || (cert.y & e) || (cert.w & e)) return false;
    const auto& f = tuple[cert.first];
    const auto& g = tuple[cert.second];
    return !g(cert.y) && f(cert.y | e) && g(cert.w) && !f(cert.w | e);
}

}  // namespace

bool verify_certificate(const OrderedTuple& tuple, const Certificate& cert) {
    int n = tuple_arity(tuple);
    if (cert.structure && cert.structure->arity() != n) return false;
    switch (cert.kind) {
        case Certificate::Kind::Direction: return replay_direction(tuple, cert);
        case Certificate::Kind::Farkas: return replay_farkas(tuple, cert);
        case Certificate::Kind::Collapse: {
            if (!cert.structure || cert.children.size() != 1) return false;
            if (cert.direction < 1 || cert.direction > n) return false;
            auto sub = collapse_tuple(tuple, cert.direction, cert.side);
            auto shape = collapsed_shape(*cert.structure, cert.direction, cert.side);
            if (!sub || !shape) return false;
            const auto& child = cert.children[0];
            if (child.kind != Certificate::Kind::Direction && child.kind != Certificate::Kind::Farkas) return false;
            if (!child.structure || !(*child.structure == *shape)) return false;
            return verify_certificate(*sub, child);
        }
        case Certificate::Kind::Exhaustion: {
            auto expected = enumerate_structures(n, cert.cls);
            for (const auto& s : expected) {
                bool covered = false;
                for (const auto& child : cert.children)
                    if (child.structure && *child.structure == s) {
                        if (child.kind == Certificate::Kind::Exhaustion || !verify_certificate(tuple, child))
                            return false;
                        covered = true;
                        break;
                    }
                if (!covered) return false;
            }
            return true;
        }
    }
    return false;
}

namespace {

Rational half_min_gap(const std::vector<Rational>& values, const std::vector<Rational>& thresholds) {
    std::optional<Rational> best;
    for (const auto& v : values)
        for (const auto& t : thresholds) {
            Rational d = abs(Rational(v - t));
            if (sgn(d) > 0 && (!best || d < *best)) best = d;
        }
    return best ? Rational(*best / 2) : Rational(1, 2);
}

}  // namespace

Witness lift_eta(const MbfFunction& f, const MbfFunction& g, const Witness& w, StructureClass cls) {
    OrderedTuple pair{f, g};
    if (!verify_witness(pair, w)) throw std::invalid_argument("lift_eta: witness does not realize the pair");
    if (!w.structure.in_class(cls)) throw std::invalid_argument("lift_eta: witness structure is not in the class");
    int n = f.arity();
    const Rational& tf = w.thresholds[0];
    const Rational& tg = w.thresholds[1];
    std::vector<Group> groups = w.structure.groups();
    Witness out;
    out.phi = w.phi;
    if (cls == StructureClass::PiSigma) {
        // A new factor: Lambda' = Lambda * z_{n+1}.
        if (groups.size() != 1) throw std::logic_error("lift_eta: PiSigma structure with several groups");
        groups[0].push_back(Block{n + 1});
        out.phi.low.push_back(1);
        out.phi.high.push_back(Rational(tf / tg));
        out.thresholds = {tf};
    } else {
        // A new simple term: Lambda' = Lambda + z_{n+1}.
        Rational eps = half_min_gap(lambda_values(w.structure, w.phi), w.thresholds);
        groups.push_back(Group{Block{n + 1}});
        out.phi.low.push_back(eps);
        out.phi.high.push_back(Rational(tf + eps - tg));
        out.thresholds = {Rational(tf + eps)};
    }
    out.structure = InteractionStructure(n + 1, groups);
    if (!verify_witness({eta(f, g)}, out)) throw std::logic_error("lift_eta: lifted witness fails");
    return out;
}

std::pair<OrderedTuple, Witness> lower_eta(const MbfFunction& h, const Witness& w, int var) {
    int n = h.arity();
    if (var == 0) var = n;
    if (n < 2 || var < 1 || var > n) throw ArityMismatch("lower_eta: bad direction");
    if (w.thresholds.size() != 1) throw std::invalid_argument("lower_eta: expected a single-threshold witness");
    if (!verify_witness({h}, w)) throw std::invalid_argument("lower_eta: witness does not realize h");
    const auto& s = w.structure;
    bool term = has_simple_term(s, var);
    bool factor = has_factor(s, var);
    if (!term && !factor) throw std::invalid_argument("lower_eta: z_var is neither a factor nor a simple term");

    OrderedTuple pair{restrict_and_collapse(h, var, Side::Floor), restrict_and_collapse(h, var, Side::Ceiling)};
    Witness out;
    out.structure = remove_variable(s, var);  // throws when nothing remains
    for (int i = 1; i <= n; ++i) {
        if (i == var) continue;
        out.phi.low.push_back(w.phi.low[i - 1]);
        out.phi.high.push_back(w.phi.high[i - 1]);
    }
    const Rational& theta = w.thresholds[0];
    std::vector<Rational> cand;
    if (term) {
        cand = {Rational(theta - w.phi.low[var - 1]), Rational(theta - w.phi.high[var - 1])};
    } else {
        cand = {Rational(theta / w.phi.low[var - 1]), Rational(theta / w.phi.high[var - 1])};
    }
    auto th = fit_thresholds(pair, lambda_values(out.structure, out.phi), &cand);
    if (!th) throw std::logic_error("lower_eta: no thresholds for the lowered pair");
    out.thresholds = *th;
    if (!verify_witness(pair, out)) throw std::logic_error("lower_eta: lowered witness fails");
    return {pair, out};
}

std::pair<OrderedTuple, Witness> collapse_witness(const OrderedTuple& tuple, const Witness& w, int var, Side side) {
    if (!verify_witness(tuple, w)) throw std::invalid_argument("collapse_witness: witness does not realize the tuple");
    auto cs = collapse_structure(w.structure, var, side, w.phi);
    OrderedTuple sub;
    for (const auto& f : tuple) sub.push_back(restrict_and_collapse(f, var, side));
    std::vector<Rational> cand;
    for (const auto& t : w.thresholds) cand.push_back(Rational(t - cs.offset));
    auto values = lambda_values(cs.structure, cs.phi);
    auto th = fit_thresholds(sub, values, &cand);
    if (!th) throw std::logic_error("collapse_witness: no thresholds for the collapsed tuple");
    Witness out{cs.structure, cs.phi, *th};
    if (!verify_witness(sub, out)) throw std::logic_error("collapse_witness: collapsed witness fails");
    return {sub, out};
}

bool separates(const MbfFunction& f, const SeparatingStructure& sep) {
    int n = f.arity();
    if (static_cast<int>(sep.weights.size()) != n) throw ArityMismatch("separates: weight count");
    for (std::uint32_t c = 0; c < f.corner_count(); ++c) {
        Rational v = 0;
        for (int i = 0; i < n; ++i)
            if ((c >> i) & 1u) v += sep.weights[i];
        if ((v > sep.theta) != f(c)) return false;
    }
    return true;
}

SeparatingStructure sigma_threshold_convert(const Witness& w) {
    if (w.structure.tag() != StructureClass::Sigma) throw std::invalid_argument("convert: not a Sigma structure");
    if (w.thresholds.size() != 1) throw std::invalid_argument("convert: expected a single threshold");
    int n = w.structure.arity();
    SeparatingStructure out;
    out.theta = w.thresholds[0];
    std::uint32_t support = w.structure.support();
    for (int i = 1; i <= n; ++i) {
        if (support & (1u << (i - 1))) {
            out.weights.push_back(Rational(w.phi.high[i - 1] - w.phi.low[i - 1]));
            out.theta -= w.phi.low[i - 1];
        } else {
            out.weights.push_back(0);
        }
    }
    return out;
}

Witness sigma_threshold_inverse(const MbfFunction& f, const SeparatingStructure& sep) {
    int n = f.arity();
    if (n < 1 || static_cast<int>(sep.weights.size()) != n) throw ArityMismatch("inverse: weight count");
    for (const auto& a : sep.weights)
        if (sgn(a) < 0) throw std::invalid_argument("inverse: negative weight");
    if (!(sep.theta > -n)) throw std::invalid_argument("inverse: theta must exceed -n");
    if (!separates(f, sep)) throw std::invalid_argument("inverse: structure does not separate f");

    std::vector<Rational> sums(f.corner_count(), 0);
    for (std::uint32_t c = 0; c < f.corner_count(); ++c)
        for (int i = 0; i < n; ++i)
            if ((c >> i) & 1u) sums[c] += sep.weights[i];
    auto margins = [&](const Rational& theta, std::optional<Rational>& lo, std::optional<Rational>& hi) {
        lo.reset();
        hi.reset();
        for (std::uint32_t c = 0; c < f.corner_count(); ++c) {
            Rational d = f(c) ? Rational(sums[c] - theta) : Rational(theta - sums[c]);
            auto& slot = f(c) ? hi : lo;
            if (!slot || d < *slot) slot = d;
        }
    };
    Rational theta = sep.theta;
    std::optional<Rational> lo, hi;
    margins(theta, lo, hi);
    // A false corner exactly on theta would sit on the threshold of the witness.
    if (lo && sgn(*lo) == 0) {
        theta += hi ? Rational(*hi / 2) : Rational(1);
        margins(theta, lo, hi);
    }
    bool zero_weight = false;
    for (const auto& a : sep.weights)
        if (sgn(a) == 0) zero_weight = true;
    Rational delta = 0;
    if (zero_weight) {
        Rational m = lo ? *lo : *hi;
        if (hi && *hi < m) m = *hi;
        delta = m / (2 * n);
    }
    Witness w;
    w.structure = sigma_structure(n, full_mask(n));
    for (int i = 0; i < n; ++i) {
        w.phi.low.push_back(1);
        w.phi.high.push_back(Rational(1 + sep.weights[i] + (sgn(sep.weights[i]) == 0 ? delta : Rational(0))));
    }
    w.thresholds = {Rational(theta + n)};
    if (!verify_witness({f}, w)) throw std::logic_error("inverse: reconstructed witness fails");
    return w;
}

}  // namespace mbfreal
