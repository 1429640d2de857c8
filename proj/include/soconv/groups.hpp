#pragma once

// Explicit matrix groups over F_q: enumeration by BFS closure from Chevalley
// generators, canonical (lexicographic) element ordering, standard subgroups,
// right-coset structure for U\G, conjugacy classes, and the disk cache.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "soconv/core.hpp"
#include "soconv/mat.hpp"

namespace soconv {

enum class GroupKind : uint8_t { GL = 0, SOEven = 1, SOOdd = 2 };

std::string kind_name(GroupKind k);
uint64_t expected_order(GroupKind kind, int rank, int q);
int matrix_dim(GroupKind kind, int rank);

// Generators: for GL_n the transvections and one multiplicative generator;
// for the orthogonal kinds the root-subgroup units plus torus generators
// (the torus carries the nontrivial spinor class).
std::vector<Mat> group_generators(GroupKind kind, int rank, const Fq& f);

// I + c(E_{ab} - E_{b'a'}) + (c^2/2) X^2 with b' = m+1-b; the universal
// one-parameter unipotent of so(J_m). Valid for a != b, b != m+1-a.
Mat orth_unit(int m, const Fq& f, int a, int b, int c);

struct SubgroupSet {
  std::vector<Mat> upper;     // U: upper unitriangular elements
  std::vector<Mat> torus;     // T: diagonal elements
  std::vector<uint32_t> upper_idx;
  std::vector<uint32_t> torus_idx;
};

struct CosetData {
  std::vector<uint32_t> coset_of;  // element index -> coset id
  std::vector<uint32_t> reps;      // coset id -> element index (canonical minimal)
};

struct ClassData {
  std::vector<uint32_t> class_of;   // element index -> class id
  std::vector<uint32_t> reps;       // class id -> element index
  std::vector<uint32_t> sizes;      // class id -> cardinality
  std::vector<uint32_t> inverse_of; // class id -> class id of inverses
};

struct EnumerateOptions {
  uint64_t budget = 10'000'000;
  std::string cache_dir;  // empty disables the cache
};

class FiniteGroup {
 public:
  static FiniteGroup enumerate(GroupKind kind, int rank, int q,
                               const EnumerateOptions& opts = {});

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }
  const Fq& field() const { return field_; }
  const Mat& form() const { return form_; }
  uint64_t order() const { return elements_.size(); }
  const std::vector<Mat>& elements() const { return elements_; }
  const Mat& at(size_t i) const { return elements_[i]; }
  const std::vector<Mat>& generators() const { return gens_; }

  // Binary search over the sorted element list; -1 when absent.
  int64_t index_of(const Mat& m) const;
  size_t identity_index() const { return id_idx_; }

  Mat mul(const Mat& a, const Mat& b) const { return mat_mul(a, b, field_); }
  Mat inv(const Mat& a) const { return mat_inverse(a, field_); }

  bool contains(const Mat& m) const { return index_of(m) >= 0; }
  // Form membership test (no table lookup): det 1 + form preservation,
  // or invertibility for GL.
  bool satisfies_defining_equations(const Mat& m) const;

  const SubgroupSet& subgroups() const;
  const CosetData& cosets() const;  // right cosets U\G
  const ClassData& classes() const;

  // Phase bookkeeping for the coset space: x = u * rep, returns u.
  Mat unipotent_part(const Mat& x, uint32_t coset_id) const;

  uint64_t fingerprint() const;  // stable across runs: (kind, rank, q)

 private:
  FiniteGroup(GroupKind k, int rank, int q);

  GroupKind kind_;
  int rank_;
  int dim_;
  Fq field_;
  Mat form_;
  std::vector<Mat> elements_;
  std::vector<Mat> gens_;
  size_t id_idx_ = 0;

  mutable std::unique_ptr<SubgroupSet> subs_;
  mutable std::unique_ptr<CosetData> cosets_;
  mutable std::unique_ptr<ClassData> classes_;

  void run_bfs(uint64_t budget);
  bool load_cache(const std::string& path);
  void save_cache(const std::string& path) const;
};

// Exhaustive defining-equation filter (correctness oracle for small groups):
// builds the group column by column with partial form constraints.
std::vector<Mat> exhaustive_form_filter(GroupKind kind, int rank, int q);

}  // namespace soconv
