#include "soconv/groups.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include "soconv/errors.hpp"

namespace soconv {

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::GL: return "gl";
    case GroupKind::SOEven: return "so_even";
    case GroupKind::SOOdd: return "so_odd";
  }
  return "?";
}

int matrix_dim(GroupKind kind, int rank) {
  switch (kind) {
    case GroupKind::GL: return rank;
    case GroupKind::SOEven: return 2 * rank;
    case GroupKind::SOOdd: return 2 * rank + 1;
  }
  return 0;
}

uint64_t expected_order(GroupKind kind, int rank, int q) {
  auto p = [&](int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<uint64_t>(q);
    return r;
  };
  uint64_t o = 1;
  switch (kind) {
    case GroupKind::GL: {
      // prod_{i=0}^{n-1} (q^n - q^i)
      for (int i = 0; i < rank; ++i) o *= p(rank) - p(i);
      return o;
    }
    case GroupKind::SOEven: {
      o = p(rank * (rank - 1)) * (p(rank) - 1);
      for (int i = 1; i < rank; ++i) o *= p(2 * i) - 1;
      return o;
    }
    case GroupKind::SOOdd: {
      o = p(rank * rank);
      for (int i = 1; i <= rank; ++i) o *= p(2 * i) - 1;
      return o;
    }
  }
  return 0;
}

Mat orth_unit(int m, const Fq& f, int a, int b, int c) {
  if (a == b || b == m + 1 - a) throw DomainError("orth_unit: invalid index pair");
  Mat x = mat_identity(m);
  int ap = m + 1 - a, bp = m + 1 - b;
  x.set(a - 1, b - 1, f.reduce(x.at(a - 1, b - 1) + c));
  x.set(bp - 1, ap - 1, f.reduce(x.at(bp - 1, ap - 1) - c));
  // Quadratic correction when the pair touches a self-mirror column (odd m).
  if (b == bp) {  // X^2 = -E_{a,a'}
    int corr = f.neg(f.mul(f.mul(f.reduce(c), f.reduce(c)), f.half()));
    x.set(a - 1, ap - 1, f.add(x.at(a - 1, ap - 1), corr));
  } else if (a == ap) {  // X^2 = -E_{b',b}
    int corr = f.neg(f.mul(f.mul(f.reduce(c), f.reduce(c)), f.half()));
    x.set(bp - 1, b - 1, f.add(x.at(bp - 1, b - 1), corr));
  }
  return x;
}

std::vector<Mat> group_generators(GroupKind kind, int rank, const Fq& f) {
  std::vector<Mat> gens;
  const int g = f.generator();
  if (kind == GroupKind::GL) {
    const int n = rank;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Mat e = mat_identity(n);
        e.set(i, j, 1);
        gens.push_back(e);
      }
    Mat d = mat_identity(n);
    d.set(0, 0, g);
    gens.push_back(d);
    return gens;
  }
  const int l = rank;
  const int m = matrix_dim(kind, rank);
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) {
      gens.push_back(orth_unit(m, f, i, j, 1));          // e_i - e_j
      gens.push_back(orth_unit(m, f, j, i, 1));          // -(e_i - e_j)
      gens.push_back(orth_unit(m, f, i, m + 1 - j, 1));  // e_i + e_j
      gens.push_back(orth_unit(m, f, m + 1 - j, i, 1));  // -(e_i + e_j)
    }
  if (kind == GroupKind::SOOdd) {
    const int mid = l + 1;
    for (int i = 1; i <= l; ++i) {
      gens.push_back(orth_unit(m, f, i, mid, 1));  // short e_i
      gens.push_back(orth_unit(m, f, mid, i, 1));  // short -e_i
    }
  }
  for (int i = 1; i <= l; ++i) {
    Mat t = mat_identity(m);
    t.set(i - 1, i - 1, g);
    t.set(m - i, m - i, f.inv(g));
    gens.push_back(t);
  }
  return gens;
}

namespace {

// Open-addressing index set over a growing element vector.
class IndexSet {
 public:
  explicit IndexSet(size_t cap_hint) { rehash(next_pow2(std::max<size_t>(cap_hint, 1024))); }

  // Returns existing index or inserts `m` (pushing to elems) and returns its index.
  uint32_t find_or_insert(std::vector<Mat>& elems, const Mat& m, bool& inserted) {
    if ((elems.size() + 1) * 10 > slots_.size() * 6) rehash(slots_.size() * 2, elems);
    uint64_t h = mat_hash(m);
    size_t mask = slots_.size() - 1;
    size_t pos = h & mask;
    while (slots_[pos] != kEmpty) {
      if (elems[slots_[pos]] == m) {
        inserted = false;
        return slots_[pos];
      }
      pos = (pos + 1) & mask;
    }
    uint32_t idx = static_cast<uint32_t>(elems.size());
    elems.push_back(m);
    slots_[pos] = idx;
    inserted = true;
    return idx;
  }

 private:
  static size_t next_pow2(size_t x) {
    size_t p = 1;
    while (p < x) p <<= 1;
    return p;
  }
  void rehash(size_t n, const std::vector<Mat>& elems = {}) {
    slots_.assign(n, kEmpty);
    size_t mask = n - 1;
    for (uint32_t i = 0; i < elems.size(); ++i) {
      size_t pos = mat_hash(elems[i]) & mask;
      while (slots_[pos] != kEmpty) pos = (pos + 1) & mask;
      slots_[pos] = i;
    }
  }
  static constexpr uint32_t kEmpty = 0xffffffffu;
  std::vector<uint32_t> slots_;
};

constexpr char kCacheMagic[5] = {'S', 'O', 'C', 'F', '1'};
constexpr uint32_t kCacheVersion = 1;

}  // namespace

FiniteGroup::FiniteGroup(GroupKind k, int rank, int q)
    : kind_(k), rank_(rank), dim_(matrix_dim(k, rank)), field_(q) {
  if (rank < 1) throw DomainError("FiniteGroup: rank must be positive");
  if (dim_ > kMaxDim)
    throw BudgetError("FiniteGroup: matrix dimension exceeds fixed capacity");
  form_ = (k == GroupKind::GL) ? Mat{} : mat_form_j(dim_);
}

bool FiniteGroup::satisfies_defining_equations(const Mat& m) const {
  if (m.n != dim_) return false;
  if (kind_ == GroupKind::GL) return mat_is_invertible(m, field_);
  return preserves_form(m, form_, field_);
}

FiniteGroup FiniteGroup::enumerate(GroupKind kind, int rank, int q,
                                   const EnumerateOptions& opts) {
  FiniteGroup g(kind, rank, q);
  uint64_t expect = expected_order(kind, rank, q);
  if (expect > opts.budget)
    throw BudgetError("enumerate: expected order " + std::to_string(expect) +
                      " exceeds budget " + std::to_string(opts.budget));
  g.gens_ = group_generators(kind, rank, g.field_);
  for (const auto& gen : g.gens_)
    if (!g.satisfies_defining_equations(gen))
      throw FormError("enumerate: generator fails the defining equations");

  std::string cache_path;
  if (!opts.cache_dir.empty()) {
    cache_path = opts.cache_dir + "/" + kind_name(kind) + "_" + std::to_string(rank) +
                 "_q" + std::to_string(q) + "_v" + std::to_string(kCacheVersion) + ".socf";
    if (g.load_cache(cache_path)) return g;
  }

  g.run_bfs(opts.budget);

  if (g.order() != expect)
    throw ConsistencyError("enumerate: BFS closure order " + std::to_string(g.order()) +
                           " does not match the order formula " + std::to_string(expect));

  // Closure spot-check on a deterministic sample of pairs.
  Rng rng(0x5eedu ^ g.fingerprint());
  for (int k = 0; k < 1000; ++k) {
    const Mat& a = g.elements_[rng.below(g.order())];
    const Mat& b = g.elements_[rng.below(g.order())];
    if (g.index_of(g.mul(a, b)) < 0)
      throw ConsistencyError("enumerate: closure spot-check failed");
  }

  if (!cache_path.empty()) g.save_cache(cache_path);
  return g;
}

void FiniteGroup::run_bfs(uint64_t budget) {
  elements_.clear();
  IndexSet set(1 << 16);
  bool ins = false;
  set.find_or_insert(elements_, mat_identity(dim_), ins);
  std::vector<uint32_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<uint32_t> next;
    for (uint32_t idx : frontier) {
      Mat cur = elements_[idx];
      for (const auto& gen : gens_) {
        Mat prod = mat_mul(cur, gen, field_);
        uint32_t j = set.find_or_insert(elements_, prod, ins);
        if (ins) next.push_back(j);
        if (elements_.size() > budget)
          throw BudgetError("enumerate: element budget exceeded during closure");
      }
    }
    frontier = std::move(next);
  }
  std::sort(elements_.begin(), elements_.end());
  auto it = std::lower_bound(elements_.begin(), elements_.end(), mat_identity(dim_));
  id_idx_ = static_cast<size_t>(it - elements_.begin());
}

int64_t FiniteGroup::index_of(const Mat& m) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), m);
  if (it == elements_.end() || !(*it == m)) return -1;
  return it - elements_.begin();
}

const SubgroupSet& FiniteGroup::subgroups() const {
  if (!subs_) {
    subs_ = std::make_unique<SubgroupSet>();
    for (uint32_t i = 0; i < elements_.size(); ++i) {
      if (is_upper_unitriangular(elements_[i])) {
        subs_->upper.push_back(elements_[i]);
        subs_->upper_idx.push_back(i);
      }
      if (is_diagonal(elements_[i])) {
        subs_->torus.push_back(elements_[i]);
        subs_->torus_idx.push_back(i);
      }
    }
  }
  return *subs_;
}

const CosetData& FiniteGroup::cosets() const {
  if (!cosets_) {
    const auto& u = subgroups().upper;
    cosets_ = std::make_unique<CosetData>();
    cosets_->coset_of.assign(elements_.size(), 0xffffffffu);
    for (uint32_t i = 0; i < elements_.size(); ++i) {
      if (cosets_->coset_of[i] != 0xffffffffu) continue;
      uint32_t id = static_cast<uint32_t>(cosets_->reps.size());
      cosets_->reps.push_back(i);
      for (const auto& uu : u) {
        int64_t j = index_of(mat_mul(uu, elements_[i], field_));
        cosets_->coset_of[static_cast<size_t>(j)] = id;
      }
    }
  }
  return *cosets_;
}

const ClassData& FiniteGroup::classes() const {
  if (!classes_) {
    classes_ = std::make_unique<ClassData>();
    auto& cd = *classes_;
    cd.class_of.assign(elements_.size(), 0xffffffffu);
    std::vector<Mat> gen_inv;
    for (const auto& g : gens_) gen_inv.push_back(inv(g));
    for (uint32_t i = 0; i < elements_.size(); ++i) {
      if (cd.class_of[i] != 0xffffffffu) continue;
      uint32_t id = static_cast<uint32_t>(cd.reps.size());
      cd.reps.push_back(i);
      cd.sizes.push_back(0);
      std::vector<uint32_t> stack{i};
      cd.class_of[i] = id;
      while (!stack.empty()) {
        uint32_t cur = stack.back();
        stack.pop_back();
        ++cd.sizes[id];
        for (size_t k = 0; k < gens_.size(); ++k) {
          Mat conj = mul(mul(gens_[k], elements_[cur]), gen_inv[k]);
          int64_t j = index_of(conj);
          if (cd.class_of[static_cast<size_t>(j)] == 0xffffffffu) {
            cd.class_of[static_cast<size_t>(j)] = id;
            stack.push_back(static_cast<uint32_t>(j));
          }
        }
      }
    }
    cd.inverse_of.resize(cd.reps.size());
    for (size_t c = 0; c < cd.reps.size(); ++c) {
      int64_t j = index_of(inv(elements_[cd.reps[c]]));
      cd.inverse_of[c] = cd.class_of[static_cast<size_t>(j)];
    }
  }
  return *classes_;
}

Mat FiniteGroup::unipotent_part(const Mat& x, uint32_t coset_id) const {
  const Mat& rep = elements_[cosets().reps[coset_id]];
  return mul(x, inv(rep));
}

uint64_t FiniteGroup::fingerprint() const {
  uint64_t h = fnv1a(&kind_, 1);
  h = fnv1a(&rank_, sizeof(rank_), h);
  int q = field_.q();
  return fnv1a(&q, sizeof(q), h);
}

bool FiniteGroup::load_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  auto fail = [&](const char* why) {
    std::fprintf(stderr, "[so-converse] cache %s unusable (%s); re-enumerating\n",
                 path.c_str(), why);
    return false;
  };
  char magic[5];
  if (!in.read(magic, 5) || std::memcmp(magic, kCacheMagic, 5) != 0) return fail("magic");
  uint8_t kind = 0;
  uint32_t rank = 0, q = 0;
  uint64_t order = 0;
  in.read(reinterpret_cast<char*>(&kind), 1);
  in.read(reinterpret_cast<char*>(&rank), 4);
  in.read(reinterpret_cast<char*>(&q), 4);
  in.read(reinterpret_cast<char*>(&order), 8);
  if (!in) return fail("header");
  if (kind != static_cast<uint8_t>(kind_) || rank != static_cast<uint32_t>(rank_) ||
      q != static_cast<uint32_t>(field_.q()))
    return fail("key mismatch");
  if (order != expected_order(kind_, rank_, field_.q())) return fail("order");
  const int w = packed_width(dim_, field_.q());
  std::vector<uint8_t> buf(w);
  elements_.clear();
  elements_.reserve(order);
  for (uint64_t i = 0; i < order; ++i) {
    if (!in.read(reinterpret_cast<char*>(buf.data()), w)) {
      elements_.clear();
      return fail("truncated");
    }
    elements_.push_back(mat_unpack(buf.data(), w, dim_, field_.q()));
  }
  if (!std::is_sorted(elements_.begin(), elements_.end())) {
    elements_.clear();
    return fail("unsorted");
  }
  // Spot-check the content before trusting it.
  Rng rng(0xcac4e ^ fingerprint());
  for (int k = 0; k < 64; ++k) {
    const Mat& a = elements_[rng.below(elements_.size())];
    const Mat& b = elements_[rng.below(elements_.size())];
    if (!satisfies_defining_equations(a) || index_of(mat_mul(a, b, field_)) < 0) {
      elements_.clear();
      return fail("content");
    }
  }
  auto it = std::lower_bound(elements_.begin(), elements_.end(), mat_identity(dim_));
  if (it == elements_.end() || !(*it == mat_identity(dim_))) {
    elements_.clear();
    return fail("identity missing");
  }
  id_idx_ = static_cast<size_t>(it - elements_.begin());
  return true;
}

void FiniteGroup::save_cache(const std::string& path) const {
  std::error_code ec;
  std::filesystem::create_directories(std::filesystem::path(path).parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return;
  out.write(kCacheMagic, 5);
  uint8_t kind = static_cast<uint8_t>(kind_);
  uint32_t rank = static_cast<uint32_t>(rank_), q = static_cast<uint32_t>(field_.q());
  uint64_t order = elements_.size();
  out.write(reinterpret_cast<const char*>(&kind), 1);
  out.write(reinterpret_cast<const char*>(&rank), 4);
  out.write(reinterpret_cast<const char*>(&q), 4);
  out.write(reinterpret_cast<const char*>(&order), 8);
  const int w = packed_width(dim_, field_.q());
  std::vector<uint8_t> buf(w);
  for (const auto& m : elements_) {
    mat_pack(m, field_.q(), buf.data(), w);
    out.write(reinterpret_cast<const char*>(buf.data()), w);
  }
}

std::vector<Mat> exhaustive_form_filter(GroupKind kind, int rank, int q) {
  const Fq f(q);
  const int n = matrix_dim(kind, rank);
  const Mat j = mat_form_j(n);
  std::vector<Mat> out;
  if (kind == GroupKind::GL) {
    // Direct scan of all matrices; only sensible for tiny q^(n^2).
    uint64_t total = 1;
    for (int k = 0; k < n * n; ++k) total *= static_cast<uint64_t>(q);
    Mat m = mat_zero(n);
    for (uint64_t code = 0; code < total; ++code) {
      uint64_t c = code;
      for (int k = 0; k < n * n; ++k) {
        m.a[k] = static_cast<uint8_t>(c % q);
        c /= q;
      }
      if (mat_is_invertible(m, f)) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Column-by-column with partial pairing constraints <c_a, J c_b> = J_ab.
  std::vector<std::vector<int>> cols(n, std::vector<int>(n, 0));
  std::vector<Mat> acc;
  std::vector<int> cand(n);
  auto pair_ok = [&](int a, int b) {
    long long s = 0;
    for (int i = 0; i < n; ++i) s += cols[a][i] * cols[b][n - 1 - i];
    int want = (a + b == n - 1) ? 1 : 0;
    return f.reduce(s) == want;
  };
  uint64_t col_total = 1;
  for (int k = 0; k < n; ++k) col_total *= static_cast<uint64_t>(q);
  std::function<void(int)> rec = [&](int a) {
    if (a == n) {
      Mat m = mat_zero(n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) m.set(i, c, cols[c][i]);
      if (mat_det(m, f) == 1) acc.push_back(m);
      return;
    }
    for (uint64_t code = 0; code < col_total; ++code) {
      uint64_t c = code;
      for (int i = 0; i < n; ++i) {
        cols[a][i] = static_cast<int>(c % q);
        c /= q;
      }
      bool ok = true;
      for (int b = 0; b <= a && ok; ++b) ok = pair_ok(a, b) && (b == a || pair_ok(b, a));
      if (ok) rec(a + 1);
    }
  };
  rec(0);
  std::sort(acc.begin(), acc.end());
  return acc;
}

}  // namespace soconv
