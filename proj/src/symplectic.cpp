#include "shiftsym/symplectic.hpp"

#include <algorithm>

namespace shiftsym {

namespace {

Rational sign(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

void check_same_shape(const ShiftedForm& a, const ShiftedForm& b, const char* what) {
    if (a.shift() != b.shift() || a.k() != b.k() || a.model().dims() != b.model().dims())
        throw InvalidInput(std::string(what) + ": shifted forms have different shapes");
}

// s_{idx.back()} ∘ ... ∘ s_{idx.front()} starting at `level`.
RatMatrix degeneracy_word(const LinSimpSpace& x, int level, const std::vector<int>& idx) {
    RatMatrix m = RatMatrix::Identity(x.dim(level), x.dim(level));
    for (int i : idx) m = product(x.degeneracy(level++, i), m);
    return m;
}

Index tangent_dim(const TangentComplexData& t, int l) { return l >= 0 && l <= t.n ? t.complex.dim(l) : 0; }

RatMatrix gram_or_zero(const IMForMatrix& im, const TangentComplexData& t, int l) {
    auto it = im.gram.find(l);
    if (it != im.gram.end()) return it->second;
    return RatMatrix::Zero(tangent_dim(t, l), tangent_dim(t, im.shift - l));
}

}  // namespace

ShiftedForm::ShiftedForm(LinSimpSpace model, int shift, int k, std::vector<PolyForm> components)
    : model_(std::move(model)), shift_(shift), k_(k), comps_(std::move(components)) {
    if (shift < -1 || k < 0) throw InvalidInput("ShiftedForm: negative shift or degree");
    if (static_cast<int>(comps_.size()) != std::max(shift + 1, 0))
        throw InvalidInput("ShiftedForm: expected " + std::to_string(shift + 1) + " components");
    if (shift > model_.max_level()) throw InvalidInput("ShiftedForm: model has too few levels for the shift");
    for (int i = 0; i <= shift; ++i) {
        const auto& c = comps_[static_cast<std::size_t>(i)];
        if (c.degree() != k + shift - i)
            throw InvalidInput("ShiftedForm: component " + std::to_string(i) + " has degree " +
                               std::to_string(c.degree()) + ", expected " + std::to_string(k + shift - i));
        if (c.dim() != model_.dim(i))
            throw InvalidInput("ShiftedForm: component " + std::to_string(i) + " lives on dimension " +
                               std::to_string(c.dim()) + ", level has " + std::to_string(model_.dim(i)));
    }
}

ShiftedForm ShiftedForm::zero(LinSimpSpace model, int shift, int k) {
    std::vector<PolyForm> comps;
    for (int i = 0; i <= shift; ++i) comps.emplace_back(static_cast<int>(model.dim(i)), k + shift - i);
    return ShiftedForm(std::move(model), shift, k, std::move(comps));
}

int ShiftedForm::max_weight() const {
    int w = k_;
    for (auto& c : comps_) w = std::max(w, c.max_weight());
    return w;
}

bool ShiftedForm::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const PolyForm& c) { return c.is_zero(); });
}

ShiftedForm& ShiftedForm::operator+=(const ShiftedForm& o) {
    check_same_shape(*this, o, "add");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
}

ShiftedForm& ShiftedForm::operator-=(const ShiftedForm& o) {
    check_same_shape(*this, o, "subtract");
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
}

ShiftedForm ShiftedForm::operator-() const {
    ShiftedForm out = *this;
    for (auto& c : out.comps_) c *= Rational(-1);
    return out;
}

bool operator==(const ShiftedForm& a, const ShiftedForm& b) {
    return a.shift_ == b.shift_ && a.k_ == b.k_ && a.model_.dims() == b.model_.dims() && a.comps_ == b.comps_;
}

ShiftedForm total_differential(const ShiftedForm& a) {
    const int m = a.shift();
    const auto& x = a.model();
    if (x.max_level() < m + 1) throw InvalidInput("total_differential: model needs level " + std::to_string(m + 1));
    std::vector<PolyForm> out;
    for (int i = 0; i <= m + 1; ++i) {
        PolyForm c(static_cast<int>(x.dim(i)), a.k() + m + 1 - i);
        if (i >= 1) c += simplicial_delta(x, i, a.component(i - 1));
        if (i <= m) c += sign(i) * de_rham_d(a.component(i));
        out.push_back(std::move(c));
    }
    return ShiftedForm(x, m + 1, a.k(), std::move(out));
}

std::vector<int> unnormalized_components(const ShiftedForm& a) {
    std::vector<int> out;
    for (int i = 1; i <= a.shift(); ++i)
        for (int j = 0; j < i; ++j)
            if (!pullback(a.model().degeneracy(i - 1, j), a.component(i)).is_zero()) {
                out.push_back(i);
                break;
            }
    return out;
}

PresymplecticReport check_presymplectic(const ShiftedForm& a) {
    if (a.k() != 2) throw InvalidInput("check_presymplectic: expected a 2-form, got form degree " + std::to_string(a.k()));
    PresymplecticReport r;
    auto d = total_differential(a);
    for (int i = 0; i <= d.shift(); ++i)
        if (!d.component(i).is_zero()) {
            r.first_nonclosed = i;
            break;
        }
    r.closed = !r.first_nonclosed;
    r.multiplicative = a.shift() < 0 || simplicial_delta(a.model(), a.shift() + 1, a.component(a.shift())).is_zero();
    auto bad = unnormalized_components(a);
    if (!bad.empty()) r.first_unnormalized = bad.front();
    r.normalized = bad.empty();
    return r;
}

std::vector<Shuffle> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw InvalidInput("shuffles: negative size");
    std::vector<Shuffle> out;
    const int n = p + q;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != p) continue;
        Shuffle s;
        int inversions = 0;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1u) {
                inversions += static_cast<int>(s.nu.size());
                s.mu.push_back(i);
            } else {
                s.nu.push_back(i);
            }
        }
        s.sign = inversions % 2 == 0 ? 1 : -1;
        out.push_back(std::move(s));
    }
    return out;
}

IMForMatrix im_pairing(const ShiftedForm& a, const TangentComplexData& t) {
    if (a.k() != 2) throw InvalidInput("im_pairing: expected a shifted 2-form");
    const int m = a.shift();
    const auto& x = a.model();
    IMForMatrix im;
    im.shift = m;
    if (m < 0) return im;
    RatMatrix g = a.component(m).constant_gram();
    for (int l = 0; l <= m; ++l) {
        RatMatrix gram = RatMatrix::Zero(tangent_dim(t, l), tangent_dim(t, m - l));
        if (gram.size() > 0) {
            const RatMatrix& bl = t.inclusions[static_cast<std::size_t>(l)].basis();
            const RatMatrix& br = t.inclusions[static_cast<std::size_t>(m - l)].basis();
            for (auto& s : shuffles(l, m - l)) {
                RatMatrix u = product(degeneracy_word(x, l, s.nu), bl);
                RatMatrix v = product(degeneracy_word(x, m - l, s.mu), br);
                RatMatrix term = product(RatMatrix(u.transpose()), product(g, v));
                if (s.sign > 0)
                    gram += term;
                else
                    gram -= term;
            }
        }
        im.gram[l] = gram;
    }
    std::map<int, RatMatrix> reps;
    for (int l = 0; l <= m; ++l)
        reps[l] = l <= t.n ? homology_at(t.complex, l).representatives : RatMatrix(0, 0);
    for (int l = 0; l <= m; ++l) {
        im.representatives[l] = reps[l];
        im.descended[l] = product(RatMatrix(reps[l].transpose()), product(im.gram[l], reps[m - l]));
    }
    return im;
}

IMForMatrix im_pairing(const ShiftedForm& a, int n) { return im_pairing(a, tangent_complex(a.model(), n)); }

bool check_im_multiplicative(const IMForMatrix& im, const TangentComplexData& t) {
    const int m = im.shift;
    for (int l = 0; l <= m + 1; ++l) {
        const Index du = tangent_dim(t, l), dw = tangent_dim(t, m + 1 - l);
        if (du == 0 || dw == 0) continue;
        RatMatrix lhs = RatMatrix::Zero(du, dw);
        if (l >= 1) lhs += product(RatMatrix(t.complex.out(l).transpose()), gram_or_zero(im, t, l - 1));
        if (l <= m) lhs += sign(l + 1) * product(gram_or_zero(im, t, l), t.complex.out(m + 1 - l));
        if (!is_zero_matrix(lhs)) return false;
    }
    return true;
}

bool check_graded_antisymmetry(const IMForMatrix& im) {
    const int m = im.shift;
    for (auto& [l, g] : im.gram) {
        auto it = im.gram.find(m - l);
        if (it == im.gram.end()) return false;
        RatMatrix expect = -sign(l * (m - l)) * RatMatrix(it->second.transpose());
        if (g != expect) return false;
    }
    return true;
}

bool SymplecticReport::pass() const {
    return presymplectic.pass() && lie &&
           std::all_of(pairings.begin(), pairings.end(), [](const PairingCheck& p) { return p.perfect(); });
}

std::string SymplecticReport::message() const {
    if (!lie) return "model is not a Lie n-groupoid: " + lie_failure;
    if (!presymplectic.closed)
        return "not closed: component " + std::to_string(*presymplectic.first_nonclosed) + " of Dα is nonzero";
    if (!presymplectic.normalized)
        return "not normalized: component " + std::to_string(*presymplectic.first_unnormalized);
    for (auto& p : pairings) {
        if (p.perfect()) continue;
        if (p.dim_l != p.dim_dual)
            return "degenerate pairing at l = " + std::to_string(p.l) + ": dim H_" + std::to_string(p.l) + " = " +
                   std::to_string(p.dim_l) + " but dual degree has " + std::to_string(p.dim_dual) + ", rank " +
                   std::to_string(p.rank);
        return "degenerate pairing at l = " + std::to_string(p.l) + ", rank " + std::to_string(p.rank) + " of " +
               std::to_string(p.dim_l);
    }
    return "";
}

SymplecticReport check_shifted_symplectic(const ShiftedForm& a, int n) {
    SymplecticReport r;
    r.presymplectic = check_presymplectic(a);
    auto lie = check_lie_n_groupoid(a.model(), n);
    r.lie = lie.pass();
    if (!r.lie) {
        auto h = *lie.first_failure();
        r.lie_failure = "horn (" + std::to_string(h.m) + "," + std::to_string(h.j) + ") fails";
        return r;
    }
    auto t = tangent_complex(a.model(), n, false);
    auto im = im_pairing(a, t);
    for (int l = 0; l <= a.shift(); ++l) {
        const RatMatrix& g = im.descended.at(l);
        r.pairings.push_back({l, g.rows(), g.cols(), rank(g)});
    }
    return r;
}

ShiftedForm pullback_shifted(const SimpLinMap& f, const ShiftedForm& a) {
    if (f.target().dims() != a.model().dims()) throw InvalidInput("pullback_shifted: map does not target the form's model");
    if (f.max_level() < a.shift()) throw InvalidInput("pullback_shifted: map has too few levels");
    std::vector<PolyForm> comps;
    for (int i = 0; i <= a.shift(); ++i) comps.push_back(pullback(f.level(i), a.component(i)));
    return ShiftedForm(f.source(), a.shift(), a.k(), std::move(comps));
}

ShiftedForm gauge_transform(const ShiftedForm& a, const ShiftedForm& phi) {
    if (phi.shift() != a.shift() - 1 || phi.k() != a.k() || phi.model().dims() != a.model().dims())
        throw InvalidInput("gauge_transform: gauge form must have shift m - 1 on the same model");
    return a + total_differential(phi);
}

std::string MoritaReport::message() const {
    if (!f_hypercover) return "first leg is not a hypercover";
    if (!g_hypercover) return "second leg is not a hypercover";
    if (!alpha.pass()) return "first form: " + alpha.message();
    if (!beta.pass()) return "second form: " + beta.message();
    if (!equation) return "f*α - g*β != Dφ";
    return "";
}

MoritaReport check_symplectic_morita(const SymplecticMorita& e, int n) {
    if (e.f.target().dims() != e.alpha.model().dims() || e.g.target().dims() != e.beta.model().dims() ||
        e.f.source().dims() != e.g.source().dims() || e.phi.model().dims() != e.f.source().dims())
        throw InvalidInput("check_symplectic_morita: maps and forms do not fit together");
    if (e.alpha.shift() != e.beta.shift() || e.phi.shift() != e.alpha.shift() - 1)
        throw InvalidInput("check_symplectic_morita: shifts do not match");
    MoritaReport r;
    r.f_hypercover = check_hypercover(e.f, n).pass();
    r.g_hypercover = check_hypercover(e.g, n).pass();
    r.alpha = check_shifted_symplectic(e.alpha, n);
    r.beta = check_shifted_symplectic(e.beta, n);
    r.equation = pullback_shifted(e.f, e.alpha) - pullback_shifted(e.g, e.beta) == total_differential(e.phi);
    return r;
}

SymplecticMorita compose_morita(const SymplecticMorita& first, const SymplecticMorita& second) {
    if (!(first.beta == second.alpha) || !(first.g.target() == second.f.target()))
        throw InvalidInput("compose_morita: middle models differ");
    auto u = fiber_product(first.g, second.f);
    SymplecticMorita out;
    out.alpha = first.alpha;
    out.beta = second.beta;
    out.f = compose(first.f, u.to_first);
    out.g = compose(second.g, u.to_second);
    out.phi = pullback_shifted(u.to_first, first.phi) + pullback_shifted(u.to_second, second.phi);
    return out;
}

}  // namespace shiftsym
