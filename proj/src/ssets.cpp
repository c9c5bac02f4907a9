#include "shiftsym/ssets.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "shiftsym/rational.hpp"

namespace shiftsym {

namespace {

std::string join_vertices(const std::vector<int>& f, int m) {
    std::string out;
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (m > 9 && t > 0) out += ',';
        out += std::to_string(f[t]);
    }
    return out;
}

void monotone_maps(int k, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k + 1) {
        out.push_back(cur);
        return;
    }
    int start = cur.empty() ? 0 : cur.back();
    for (int v = start; v <= m; ++v) {
        cur.push_back(v);
        monotone_maps(k, m, cur, out);
        cur.pop_back();
    }
}

unsigned image_mask(const std::vector<int>& f) {
    unsigned mask = 0;
    for (int v : f) mask |= 1u << v;
    return mask;
}

}  // namespace

SimplicialShape::SimplicialShape(std::vector<std::vector<std::string>> names,
                                 std::vector<std::vector<std::vector<std::size_t>>> faces,
                                 std::vector<std::vector<std::vector<std::size_t>>> degeneracies)
    : names_(std::move(names)), faces_(std::move(faces)), degens_(std::move(degeneracies)) {
    const std::size_t levels = names_.size();
    if (levels == 0) throw InvalidInput("shape needs at least level 0");
    if (faces_.size() != levels || degens_.size() != levels)
        throw InvalidInput("shape: face/degeneracy tables must cover every level");
    for (std::size_t m = 0; m < levels; ++m) {
        if (faces_[m].size() != (m == 0 ? 0 : m + 1))
            throw InvalidInput("shape: level " + std::to_string(m) + " needs " + std::to_string(m + 1) + " faces");
        for (auto& row : faces_[m]) {
            if (row.size() != names_[m].size()) throw InvalidInput("shape: face table size mismatch");
            for (auto t : row)
                if (t >= names_[m - 1].size()) throw InvalidInput("shape: face target out of range");
        }
        if (degens_[m].size() != (m + 1 == levels ? 0 : m + 1))
            throw InvalidInput("shape: level " + std::to_string(m) + " has wrong number of degeneracies");
        for (auto& row : degens_[m]) {
            if (row.size() != names_[m].size()) throw InvalidInput("shape: degeneracy table size mismatch");
            for (auto t : row)
                if (t >= names_[m + 1].size()) throw InvalidInput("shape: degeneracy target out of range");
        }
    }
    nondegenerate_.resize(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        nondegenerate_[k].assign(names_[k].size(), 1);
        if (k == 0) continue;
        for (std::size_t x = 0; x < names_[k].size(); ++x)
            for (std::size_t i = 0; i < k; ++i)
                if (degens_[k - 1][i][faces_[k][i][x]] == x) nondegenerate_[k][x] = 0;
    }
    index_names();
}

void SimplicialShape::index_names() {
    by_name_.assign(names_.size(), {});
    for (std::size_t k = 0; k < names_.size(); ++k) {
        for (std::size_t x = 0; x < names_[k].size(); ++x) by_name_[k].emplace_back(names_[k][x], x);
        std::sort(by_name_[k].begin(), by_name_[k].end());
    }
}

const std::string& SimplicialShape::name(int level, std::size_t s) const {
    return names_.at(static_cast<std::size_t>(level)).at(s);
}

std::optional<std::size_t> SimplicialShape::find(int level, std::string_view name) const {
    if (level < 0 || level > max_level()) return std::nullopt;
    auto& v = by_name_[static_cast<std::size_t>(level)];
    auto it = std::lower_bound(v.begin(), v.end(), name,
                               [](const auto& e, std::string_view n) { return e.first < n; });
    if (it == v.end() || it->first != name) return std::nullopt;
    return it->second;
}

std::size_t SimplicialShape::face(int level, int i, std::size_t s) const {
    return faces_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(i)).at(s);
}

std::size_t SimplicialShape::degeneracy(int level, int i, std::size_t s) const {
    return degens_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(i)).at(s);
}

bool SimplicialShape::is_nondegenerate(int level, std::size_t s) const {
    return nondegenerate_.at(static_cast<std::size_t>(level)).at(s) != 0;
}

SimplicialShape::NormalForm SimplicialShape::normal_form(int level, std::size_t s) const {
    if (is_nondegenerate(level, s)) return {{level, s}, {}};
    for (int i = 0; i < level; ++i) {
        std::size_t y = face(level, i, s);
        if (degeneracy(level - 1, i, y) == s) {
            NormalForm nf = normal_form(level - 1, y);
            nf.degeneracies.push_back(i);
            return nf;
        }
    }
    throw PreconditionError("normal_form: degenerate simplex without a degeneracy witness");
}

std::vector<SimplicialShape::Simplex> SimplicialShape::nondegenerate() const {
    std::vector<Simplex> out;
    for (int k = 0; k <= max_level(); ++k)
        for (std::size_t x = 0; x < count(k); ++x)
            if (is_nondegenerate(k, x)) out.push_back({k, x});
    return out;
}

const std::vector<int>& SimplicialShape::vertex_map(int level, std::size_t s) const {
    if (!ambient_) throw InvalidInput("vertex_map: shape is not a sub-shape of a standard simplex");
    return vertex_maps_.at(static_cast<std::size_t>(level)).at(s);
}

ValidationReport SimplicialShape::validate() const {
    ValidationReport r;
    const int L = max_level();
    auto where = [](const char* law, int n, int i, int j, std::size_t x) {
        return std::string(law) + " at level " + std::to_string(n) + " (i=" + std::to_string(i) +
               ", j=" + std::to_string(j) + ", simplex " + std::to_string(x) + ")";
    };
    for (int n = 2; n <= L; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (std::size_t x = 0; x < count(n); ++x)
                    if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
                        r.fail(where("d_i d_j = d_{j-1} d_i", n, i, j, x));
    for (int n = 0; n + 2 <= L; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                for (std::size_t x = 0; x < count(n); ++x)
                    if (degeneracy(n + 1, i, degeneracy(n, j, x)) != degeneracy(n + 1, j + 1, degeneracy(n, i, x)))
                        r.fail(where("s_i s_j = s_{j+1} s_i", n, i, j, x));
    for (int n = 0; n + 1 <= L; ++n)
        for (int j = 0; j <= n; ++j)
            for (std::size_t x = 0; x < count(n); ++x) {
                std::size_t y = degeneracy(n, j, x);
                if (face(n + 1, j, y) != x || face(n + 1, j + 1, y) != x)
                    r.fail(where("d_j s_j = id = d_{j+1} s_j", n, j, j, x));
                for (int i = 0; i <= n + 1; ++i) {
                    if (i == j || i == j + 1) continue;
                    if (n == 0) continue;
                    std::size_t lhs = face(n + 1, i, y);
                    std::size_t rhs = i < j ? degeneracy(n - 1, j - 1, face(n, i, x))
                                            : degeneracy(n - 1, j, face(n, i - 1, x));
                    if (lhs != rhs) r.fail(where(i < j ? "d_i s_j = s_{j-1} d_i" : "d_i s_j = s_j d_{i-1}", n, i, j, x));
                }
            }
    for (int k = 1; k <= L; ++k)
        for (std::size_t x = 0; x < count(k); ++x)
            if (!is_nondegenerate(k, x)) {
                try {
                    (void)normal_form(k, x);
                } catch (const PreconditionError&) {
                    r.fail("canonical form missing for simplex " + name(k, x));
                }
            }
    return r;
}

SimplicialShape SimplicialShape::with_face(int level, int i, std::size_t s, std::size_t target) const {
    auto faces = faces_;
    faces.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(i)).at(s) = target;
    SimplicialShape out(names_, std::move(faces), degens_);
    out.ambient_ = ambient_;
    out.vertex_maps_ = vertex_maps_;
    return out;
}

SimplicialShape subshape_of_simplex(int m, int up_to, const std::function<bool(unsigned)>& keep) {
    if (m < 0 || up_to < 0 || m > 30) throw InvalidInput("standard simplex dimension out of range");
    std::vector<std::vector<std::vector<int>>> maps(static_cast<std::size_t>(up_to) + 1);
    std::vector<std::map<std::vector<int>, std::size_t>> index(maps.size());
    for (int k = 0; k <= up_to; ++k) {
        std::vector<std::vector<int>> all;
        std::vector<int> cur;
        monotone_maps(k, m, cur, all);
        for (auto& f : all)
            if (keep(image_mask(f))) {
                index[static_cast<std::size_t>(k)][f] = maps[static_cast<std::size_t>(k)].size();
                maps[static_cast<std::size_t>(k)].push_back(f);
            }
    }
    std::vector<std::vector<std::string>> names(maps.size());
    std::vector<std::vector<std::vector<std::size_t>>> faces(maps.size()), degens(maps.size());
    for (std::size_t k = 0; k < maps.size(); ++k) {
        for (auto& f : maps[k]) names[k].push_back(join_vertices(f, m));
        if (k > 0) {
            faces[k].assign(k + 1, std::vector<std::size_t>(maps[k].size()));
            for (std::size_t x = 0; x < maps[k].size(); ++x)
                for (std::size_t i = 0; i <= k; ++i) {
                    auto g = maps[k][x];
                    g.erase(g.begin() + static_cast<long>(i));
                    faces[k][i][x] = index[k - 1].at(g);
                }
        }
        if (k + 1 < maps.size()) {
            degens[k].assign(k + 1, std::vector<std::size_t>(maps[k].size()));
            for (std::size_t x = 0; x < maps[k].size(); ++x)
                for (std::size_t i = 0; i <= k; ++i) {
                    auto g = maps[k][x];
                    g.insert(g.begin() + static_cast<long>(i), g[i]);
                    degens[k][i][x] = index[k + 1].at(g);
                }
        }
    }
    SimplicialShape s(std::move(names), std::move(faces), std::move(degens));
    s.ambient_ = m;
    s.vertex_maps_ = std::move(maps);
    return s;
}

SimplicialShape standard_simplex(int m, int up_to) {
    return subshape_of_simplex(m, up_to, [](unsigned) { return true; });
}

SimplicialShape horn(int m, int j) {
    if (m < 1 || j < 0 || j > m) throw InvalidInput("horn: need m >= 1 and 0 <= j <= m");
    const unsigned required = ((1u << (m + 1)) - 1) & ~(1u << j);
    return subshape_of_simplex(m, m, [required](unsigned mask) { return (mask & required) != required; });
}

SimplicialShape boundary(int m, int up_to) {
    if (m < 0) throw InvalidInput("boundary: negative dimension");
    const unsigned full = (1u << (m + 1)) - 1;
    return subshape_of_simplex(m, up_to, [full](unsigned mask) { return mask != full; });
}

SimplicialShape boundary(int m) {
    return boundary(m, std::max(m, 0));
}

SimplicialShape skeleton(const SimplicialShape& s, int r) {
    if (auto m = s.ambient_simplex()) {
        // Re-derive from the vertex maps so the result stays a sub-shape of Delta^m.
        std::vector<unsigned> allowed;
        for (auto x : s.nondegenerate())
            if (x.level <= r) allowed.push_back(image_mask(s.vertex_map(x.level, x.index)));
        return subshape_of_simplex(*m, s.max_level(), [allowed](unsigned mask) {
            return std::find(allowed.begin(), allowed.end(), mask) != allowed.end();
        });
    }
    const int L = s.max_level();
    std::vector<std::vector<std::size_t>> keep(static_cast<std::size_t>(L) + 1);
    std::vector<std::vector<long>> renum(static_cast<std::size_t>(L) + 1);
    for (int k = 0; k <= L; ++k) {
        renum[static_cast<std::size_t>(k)].assign(s.count(k), -1);
        for (std::size_t x = 0; x < s.count(k); ++x)
            if (s.normal_form(k, x).core.level <= r) {
                renum[static_cast<std::size_t>(k)][x] = static_cast<long>(keep[static_cast<std::size_t>(k)].size());
                keep[static_cast<std::size_t>(k)].push_back(x);
            }
    }
    std::vector<std::vector<std::string>> names(keep.size());
    std::vector<std::vector<std::vector<std::size_t>>> faces(keep.size()), degens(keep.size());
    for (int k = 0; k <= L; ++k) {
        auto K = static_cast<std::size_t>(k);
        for (auto x : keep[K]) names[K].push_back(s.name(k, x));
        if (k > 0) {
            faces[K].assign(K + 1, {});
            for (int i = 0; i <= k; ++i)
                for (auto x : keep[K])
                    faces[K][static_cast<std::size_t>(i)].push_back(
                        static_cast<std::size_t>(renum[K - 1][s.face(k, i, x)]));
        }
        if (k < L) {
            degens[K].assign(K + 1, {});
            for (int i = 0; i <= k; ++i)
                for (auto x : keep[K])
                    degens[K][static_cast<std::size_t>(i)].push_back(
                        static_cast<std::size_t>(renum[K + 1][s.degeneracy(k, i, x)]));
        }
    }
    return SimplicialShape(std::move(names), std::move(faces), std::move(degens));
}

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<std::vector<long>> compose)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), compose_(std::move(compose)) {
    const std::size_t n = arrows_.size();
    if (compose_.size() != n) throw InvalidInput("groupoid: composition table must be arrows x arrows");
    for (auto& row : compose_)
        if (row.size() != n) throw InvalidInput("groupoid: composition table must be arrows x arrows");
    for (auto& a : arrows_)
        if (a.source >= objects_.size() || a.target >= objects_.size())
            throw InvalidInput("groupoid: arrow endpoint out of range");
    const std::size_t none = static_cast<std::size_t>(-1);
    identity_.assign(objects_.size(), none);
    for (std::size_t a = 0; a < n; ++a)
        if (arrows_[a].source == arrows_[a].target && compose_[a][a] == static_cast<long>(a) &&
            identity_[arrows_[a].source] == none)
            identity_[arrows_[a].source] = a;
    inverse_.assign(n, none);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (identity_[arrows_[a].target] != none &&
                compose_[a][b] == static_cast<long>(identity_[arrows_[a].target]) &&
                arrows_[b].target == arrows_[a].source) {
                inverse_[a] = b;
                break;
            }
}

std::optional<std::size_t> FiniteGroupoid::compose(std::size_t a, std::size_t b) const {
    long c = compose_.at(a).at(b);
    if (c < 0) return std::nullopt;
    return static_cast<std::size_t>(c);
}

ValidationReport FiniteGroupoid::validate() const {
    ValidationReport r;
    const std::size_t n = arrows_.size();
    const std::size_t none = static_cast<std::size_t>(-1);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            bool composable = arrows_[a].source == arrows_[b].target;
            long c = compose_[a][b];
            if (composable != (c >= 0)) {
                r.fail("composition of " + arrows_[a].name + " and " + arrows_[b].name +
                       (composable ? " missing" : " defined for non-composable pair"));
                continue;
            }
            if (!composable) continue;
            if (static_cast<std::size_t>(c) >= n) {
                r.fail("composition result out of range");
                continue;
            }
            auto& ab = arrows_[static_cast<std::size_t>(c)];
            if (ab.source != arrows_[b].source || ab.target != arrows_[a].target)
                r.fail("composite " + arrows_[a].name + "∘" + arrows_[b].name + " has wrong endpoints");
        }
    if (!r.ok) return r;
    for (std::size_t x = 0; x < objects_.size(); ++x) {
        if (identity_[x] == none) {
            r.fail("object " + objects_[x] + " has no identity");
            continue;
        }
        for (std::size_t a = 0; a < n; ++a) {
            if (arrows_[a].target == x && compose_[identity_[x]][a] != static_cast<long>(a))
                r.fail("left identity law fails for " + arrows_[a].name);
            if (arrows_[a].source == x && compose_[a][identity_[x]] != static_cast<long>(a))
                r.fail("right identity law fails for " + arrows_[a].name);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (inverse_[a] == none) {
            r.fail("arrow " + arrows_[a].name + " has no inverse");
            continue;
        }
        auto b = inverse_[a];
        if (compose_[b][a] != static_cast<long>(identity_[arrows_[a].source]))
            r.fail("inverse law fails for " + arrows_[a].name);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (compose_[a][b] < 0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (compose_[b][c] < 0) continue;
                long ab_c = compose_[static_cast<std::size_t>(compose_[a][b])][c];
                long a_bc = compose_[a][static_cast<std::size_t>(compose_[b][c])];
                if (ab_c != a_bc)
                    r.fail("associativity fails for " + arrows_[a].name + ", " + arrows_[b].name + ", " +
                           arrows_[c].name);
            }
        }
    return r;
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(std::size_t n) {
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < n; ++i) objects.push_back("x" + std::to_string(i));
    std::vector<Arrow> arrows;
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < n; ++s) arrows.push_back({"x" + std::to_string(t) + "<-x" + std::to_string(s), s, t});
    std::vector<std::vector<long>> comp(arrows.size(), std::vector<long>(arrows.size(), -1));
    for (std::size_t a = 0; a < arrows.size(); ++a)
        for (std::size_t b = 0; b < arrows.size(); ++b)
            if (arrows[a].source == arrows[b].target)
                comp[a][b] = static_cast<long>(arrows[a].target * n + arrows[b].source);
    return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(comp));
}

FiniteGroupoid FiniteGroupoid::cyclic_group(std::size_t n) {
    std::vector<Arrow> arrows;
    for (std::size_t k = 0; k < n; ++k) arrows.push_back({"g" + std::to_string(k), 0, 0});
    std::vector<std::vector<long>> comp(n, std::vector<long>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) comp[a][b] = static_cast<long>((a + b) % n);
    return FiniteGroupoid({"*"}, std::move(arrows), std::move(comp));
}

FiniteGroupoid FiniteGroupoid::unit_groupoid(std::size_t n) {
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < n; ++i) {
        objects.push_back("y" + std::to_string(i));
        arrows.push_back({"id_y" + std::to_string(i), i, i});
    }
    std::vector<std::vector<long>> comp(n, std::vector<long>(n, -1));
    for (std::size_t i = 0; i < n; ++i) comp[i][i] = static_cast<long>(i);
    return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(comp));
}

SimplicialShape nerve_groupoid(const FiniteGroupoid& g, int up_to) {
    auto report = g.validate();
    if (!report.ok) throw InvalidInput("nerve_groupoid: invalid groupoid: " + report.violations.front());
    if (up_to < 0) throw InvalidInput("nerve_groupoid: negative level");
    const auto& arrows = g.arrows();
    // Level k >= 1 simplices are chains (g_1, ..., g_k) with s(g_i) = t(g_{i+1}).
    std::vector<std::vector<std::vector<std::size_t>>> chains(static_cast<std::size_t>(up_to) + 1);
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(chains.size());
    for (std::size_t x = 0; x < g.objects().size(); ++x) chains[0].push_back({x});
    if (chains.size() > 1)
        for (std::size_t a = 0; a < arrows.size(); ++a) chains[1].push_back({a});
    for (std::size_t k = 2; k < chains.size(); ++k)
        for (auto& prev : chains[k - 1])
            for (std::size_t a = 0; a < arrows.size(); ++a) {
                if (arrows[prev.back()].source != arrows[a].target) continue;
                auto c = prev;
                c.push_back(a);
                chains[k].push_back(std::move(c));
            }
    for (std::size_t k = 0; k < chains.size(); ++k) {
        std::sort(chains[k].begin(), chains[k].end());
        for (std::size_t i = 0; i < chains[k].size(); ++i) index[k][chains[k][i]] = i;
    }
    std::vector<std::vector<std::string>> names(chains.size());
    for (std::size_t k = 0; k < chains.size(); ++k)
        for (auto& c : chains[k]) {
            if (k == 0) {
                names[0].push_back(g.objects()[c[0]]);
                continue;
            }
            std::string s = "[";
            for (std::size_t t = 0; t < c.size(); ++t) s += (t ? "," : "") + arrows[c[t]].name;
            names[k].push_back(s + "]");
        }
    std::vector<std::vector<std::vector<std::size_t>>> faces(chains.size()), degens(chains.size());
    for (std::size_t k = 1; k < chains.size(); ++k) {
        faces[k].assign(k + 1, std::vector<std::size_t>(chains[k].size()));
        for (std::size_t x = 0; x < chains[k].size(); ++x) {
            const auto& c = chains[k][x];
            for (std::size_t i = 0; i <= k; ++i) {
                if (k == 1) {
                    faces[1][i][x] = i == 0 ? arrows[c[0]].source : arrows[c[0]].target;
                    continue;
                }
                std::vector<std::size_t> f;
                if (i == 0) {
                    f.assign(c.begin() + 1, c.end());
                } else if (i == k) {
                    f.assign(c.begin(), c.end() - 1);
                } else {
                    f.assign(c.begin(), c.begin() + static_cast<long>(i) - 1);
                    f.push_back(*g.compose(c[i - 1], c[i]));
                    f.insert(f.end(), c.begin() + static_cast<long>(i) + 1, c.end());
                }
                faces[k][i][x] = index[k - 1].at(f);
            }
        }
    }
    for (std::size_t k = 0; k + 1 < chains.size(); ++k) {
        degens[k].assign(k + 1, std::vector<std::size_t>(chains[k].size()));
        for (std::size_t x = 0; x < chains[k].size(); ++x) {
            const auto& c = chains[k][x];
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<std::size_t> d;
                if (k == 0) {
                    d = {g.identity(c[0])};
                } else {
                    // vertex i of the chain is the target of g_{i+1} (or the source of g_k)
                    std::size_t vertex = i < k ? arrows[c[i]].target : arrows[c[k - 1]].source;
                    d = c;
                    d.insert(d.begin() + static_cast<long>(i), g.identity(vertex));
                }
                degens[k][i][x] = index[k + 1].at(d);
            }
        }
    }
    return SimplicialShape(std::move(names), std::move(faces), std::move(degens));
}

KanSetResult check_kan_set(const SimplicialShape& s, int m, int j, bool strict) {
    if (m < 1 || j < 0 || j > m) throw InvalidInput("check_kan_set: need m >= 1 and 0 <= j <= m");
    if (m > s.max_level()) throw InvalidInput("check_kan_set: shape has no level " + std::to_string(m));
    KanSetResult out;
    out.m = m;
    out.j = j;
    out.strict = strict;
    std::vector<int> positions;
    for (int i = 0; i <= m; ++i)
        if (i != j) positions.push_back(i);
    std::map<std::vector<std::size_t>, std::size_t> fillers;
    for (std::size_t y = 0; y < s.count(m); ++y) {
        std::vector<std::size_t> key;
        for (int i : positions) key.push_back(s.face(m, i, y));
        ++fillers[key];
    }
    const std::size_t candidates = s.count(m - 1);
    std::vector<std::size_t> chosen;
    // Backtracking over compatible face tuples: d_a x_b = d_{b-1} x_a for a < b.
    std::function<bool()> walk = [&]() -> bool {
        if (chosen.size() == positions.size()) {
            ++out.horns;
            auto it = fillers.find(chosen);
            std::size_t n = it == fillers.end() ? 0 : it->second;
            if (n == 0 || (strict && n != 1)) {
                out.pass = false;
                std::vector<std::string> w;
                for (std::size_t t = 0; t < chosen.size(); ++t) w.push_back(s.name(m - 1, chosen[t]));
                out.witness_faces = std::move(w);
                out.witness_fillers = n;
                return false;
            }
            return true;
        }
        const int b = positions[chosen.size()];
        for (std::size_t x = 0; x < candidates; ++x) {
            bool ok = true;
            for (std::size_t t = 0; t < chosen.size() && ok; ++t) {
                const int a = positions[t];
                if (m >= 2 && s.face(m - 1, a, x) != s.face(m - 1, b - 1, chosen[t])) ok = false;
            }
            if (!ok) continue;
            chosen.push_back(x);
            bool cont = walk();
            chosen.pop_back();
            if (!cont) return false;
        }
        return true;
    };
    walk();
    return out;
}

}  // namespace shiftsym
