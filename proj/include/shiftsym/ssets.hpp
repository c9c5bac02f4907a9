#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftsym {

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;

    void fail(std::string what) {
        ok = false;
        if (violations.size() < 32) violations.push_back(std::move(what));
    }
};

// Finite simplicial set truncated at max_level.  Simplices are indices into
// per-level tables; faces exist on levels 1..L, degeneracies on levels 0..L-1.
class SimplicialShape {
  public:
    struct Simplex {
        int level = 0;
        std::size_t index = 0;
        friend bool operator==(const Simplex&, const Simplex&) = default;
    };

    // A simplex written as s_{i_r} ... s_{i_1} applied to a nondegenerate core;
    // `degeneracies` lists i_1, ..., i_r in application order.
    struct NormalForm {
        Simplex core;
        std::vector<int> degeneracies;
    };

    SimplicialShape() = default;
    SimplicialShape(std::vector<std::vector<std::string>> names,
                    std::vector<std::vector<std::vector<std::size_t>>> faces,
                    std::vector<std::vector<std::vector<std::size_t>>> degeneracies);

    int max_level() const { return static_cast<int>(names_.size()) - 1; }
    std::size_t count(int level) const { return names_[static_cast<std::size_t>(level)].size(); }
    const std::string& name(int level, std::size_t s) const;
    std::optional<std::size_t> find(int level, std::string_view name) const;

    std::size_t face(int level, int i, std::size_t s) const;
    std::size_t degeneracy(int level, int i, std::size_t s) const;
    bool is_nondegenerate(int level, std::size_t s) const;
    NormalForm normal_form(int level, std::size_t s) const;

    // Nondegenerate simplices ordered by level, then index.
    std::vector<Simplex> nondegenerate() const;

    // For sub-shapes of a standard simplex: the monotone map [level] -> [m]
    // naming each simplex.  Empty for other shapes.
    std::optional<int> ambient_simplex() const { return ambient_; }
    const std::vector<int>& vertex_map(int level, std::size_t s) const;

    ValidationReport validate() const;

    // Raw tables, exposed for serialization and mutation tests.
    const std::vector<std::vector<std::string>>& names() const { return names_; }
    const std::vector<std::vector<std::vector<std::size_t>>>& face_table() const { return faces_; }
    const std::vector<std::vector<std::vector<std::size_t>>>& degeneracy_table() const { return degens_; }
    SimplicialShape with_face(int level, int i, std::size_t s, std::size_t target) const;

    friend SimplicialShape subshape_of_simplex(int m, int up_to, const std::function<bool(unsigned)>& keep);

  private:
    void index_names();

    std::vector<std::vector<std::string>> names_;
    std::vector<std::vector<std::vector<std::size_t>>> faces_;   // [level][i][s], level >= 1
    std::vector<std::vector<std::vector<std::size_t>>> degens_;  // [level][i][s], level < L
    std::vector<std::vector<char>> nondegenerate_;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> by_name_;
    std::optional<int> ambient_;
    std::vector<std::vector<std::vector<int>>> vertex_maps_;
};

// Sub-shape of Delta^m containing the monotone maps whose image (as a vertex
// bitmask) satisfies `keep`; `keep` must be closed under taking subsets.
SimplicialShape subshape_of_simplex(int m, int up_to, const std::function<bool(unsigned)>& keep);

SimplicialShape standard_simplex(int m, int up_to);
SimplicialShape horn(int m, int j);
SimplicialShape boundary(int m);
SimplicialShape boundary(int m, int up_to);
SimplicialShape skeleton(const SimplicialShape& s, int r);

class FiniteGroupoid {
  public:
    struct Arrow {
        std::string name;
        std::size_t source = 0;
        std::size_t target = 0;
    };

    FiniteGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   std::vector<std::vector<long>> compose);

    static FiniteGroupoid pair_groupoid(std::size_t n);
    static FiniteGroupoid cyclic_group(std::size_t n);
    static FiniteGroupoid unit_groupoid(std::size_t n);

    const std::vector<std::string>& objects() const { return objects_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    // compose(a, b) = a ∘ b, defined when source(a) == target(b).
    std::optional<std::size_t> compose(std::size_t a, std::size_t b) const;
    std::size_t identity(std::size_t object) const { return identity_[object]; }
    std::size_t inverse(std::size_t arrow) const { return inverse_[arrow]; }

    ValidationReport validate() const;

  private:
    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<long>> compose_;
    std::vector<std::size_t> identity_;
    std::vector<std::size_t> inverse_;
};

SimplicialShape nerve_groupoid(const FiniteGroupoid& g, int up_to);

struct KanSetResult {
    bool pass = true;
    int m = 0;
    int j = 0;
    bool strict = false;
    std::size_t horns = 0;
    // First horn with no filler (or several when strict): faces by i != j, and filler count.
    std::optional<std::vector<std::string>> witness_faces;
    std::size_t witness_fillers = 0;
};

KanSetResult check_kan_set(const SimplicialShape& s, int m, int j, bool strict);

}  // namespace shiftsym
