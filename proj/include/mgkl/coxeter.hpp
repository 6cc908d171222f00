#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mgkl/intmat.hpp"

namespace mgkl {

// Finite Weyl group engine. Elements are canonically represented by their
// integer matrix action on the coroot lattice (hashable, no reduced-word
// normalization); the root-lattice action is carried along for length and
// reflection bookkeeping. Everything is enumerated and tabulated once at
// construction; the context is immutable afterwards and safe to share.

struct CartanDatum {
  std::string label;
  int rank = 0;
  // A[i][j] = <alpha_j, alphacheck_i> (pairing of the j-th simple root with
  // the i-th simple coroot), row-major.
  std::vector<int> a;

  int entry(int i, int j) const { return a[static_cast<std::size_t>(i) * rank + j]; }
};

inline CartanDatum cartan_datum(const std::string& type) {
  auto chain = [](const std::string& label, int n) {
    CartanDatum d{label, n, std::vector<int>(static_cast<std::size_t>(n) * n, 0)};
    for (int i = 0; i < n; ++i) d.a[static_cast<std::size_t>(i) * n + i] = 2;
    for (int i = 0; i + 1 < n; ++i) {
      d.a[static_cast<std::size_t>(i) * n + i + 1] = -1;
      d.a[static_cast<std::size_t>(i + 1) * n + i] = -1;
    }
    return d;
  };
  if (type == "A1") return chain("A1", 1);
  if (type == "A2") return chain("A2", 2);
  if (type == "A3") return chain("A3", 3);
  if (type == "A4") return chain("A4", 4);
  if (type == "B2" || type == "B3") {
    int n = type == "B2" ? 2 : 3;
    CartanDatum d = chain(type, n);
    // last simple root short: a_{n,n-1} = -2
    d.a[static_cast<std::size_t>(n - 1) * n + n - 2] = -2;
    return d;
  }
  if (type == "C2" || type == "C3") {
    int n = type == "C2" ? 2 : 3;
    CartanDatum d = chain(type, n);
    // last simple root long: a_{n-1,n} = -2
    d.a[static_cast<std::size_t>(n - 2) * n + n - 1] = -2;
    return d;
  }
  if (type == "D4") {
    CartanDatum d{"D4", 4, std::vector<int>(16, 0)};
    for (int i = 0; i < 4; ++i) d.a[static_cast<std::size_t>(i) * 4 + i] = 2;
    // node 2 (index 1) is the branch node
    for (int other : {0, 2, 3}) {
      d.a[static_cast<std::size_t>(1) * 4 + other] = -1;
      d.a[static_cast<std::size_t>(other) * 4 + 1] = -1;
    }
    return d;
  }
  if (type == "G2") return CartanDatum{"G2", 2, {2, -1, -3, 2}};
  throw std::invalid_argument("unsupported Cartan type '" + type +
                              "' (supported: A1..A4, B2, B3, C2, C3, D4, G2)");
}

inline void validate_cartan(const CartanDatum& d) {
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) {
      int v = d.entry(i, j);
      if (i == j && v != 2) throw std::invalid_argument("Cartan matrix: diagonal must be 2");
      if (i != j && v > 0) throw std::invalid_argument("Cartan matrix: off-diagonal must be <= 0");
      if (i != j && ((v == 0) != (d.entry(j, i) == 0)))
        throw std::invalid_argument("Cartan matrix: A_ij = 0 iff A_ji = 0 violated");
    }
}

struct WeylElt {
  int id = -1;
  bool operator==(const WeylElt&) const = default;
  auto operator<=>(const WeylElt&) const = default;
};

struct Reflection {
  WeylElt elt;
  IntVec root;    // positive root, simple-root coordinates
  IntVec coroot;  // its coroot, simple-coroot coordinates
};

struct ParabolicQuotient {
  std::vector<int> J;               // sorted simple indices (0-based)
  std::vector<WeylElt> min_reps;    // sorted by (length, canonical word)
  WeylElt w_J;                      // longest element of W_J
};

class WeylGroup {
 public:
  static constexpr int kMaxElements = 1200;

  explicit WeylGroup(const CartanDatum& datum) : datum_(datum) {
    validate_cartan(datum_);
    build_roots();
    build_elements();
    build_words_and_inverse();
    build_reflections();
    build_bruhat();
  }

  static WeylGroup make(const std::string& type) { return WeylGroup(cartan_datum(type)); }

  const CartanDatum& datum() const { return datum_; }
  int rank() const { return datum_.rank; }
  int size() const { return static_cast<int>(coroot_mat_.size()); }

  WeylElt identity() const { return {0}; }
  WeylElt simple(int i) const { return simple_[i]; }
  WeylElt longest() const { return longest_; }

  int length(WeylElt w) const { return length_[check(w)]; }
  const IntMat& coroot_matrix(WeylElt w) const { return coroot_mat_[check(w)]; }
  const IntMat& root_matrix(WeylElt w) const { return root_mat_[check(w)]; }

  WeylElt mult(WeylElt a, WeylElt b) const {
    IntMat m = coroot_mat_[check(a)] * coroot_mat_[check(b)];
    return {lookup(m)};
  }
  WeylElt rmult(WeylElt a, int s) const { return {rmult_[check(a)][s]}; }
  WeylElt lmult(int s, WeylElt a) const { return {lmult_[check(a)][s]}; }
  WeylElt inverse(WeylElt a) const { return {inverse_[check(a)]}; }

  bool right_descent(WeylElt w, int s) const { return length_[rmult_[check(w)][s]] < length_[w.id]; }
  bool left_descent(WeylElt w, int s) const { return length_[lmult_[check(w)][s]] < length_[w.id]; }

  // Bruhat order x <= w.
  bool leq(WeylElt x, WeylElt w) const {
    return (leq_[check(w)][static_cast<std::size_t>(check(x)) >> 6] >> (x.id & 63)) & 1;
  }
  bool lt(WeylElt x, WeylElt w) const { return x != w && leq(x, w); }

  // Canonical display word: lexicographically least reduced word, digits 1..9;
  // identity is the empty string.
  const std::string& word(WeylElt w) const { return word_[check(w)]; }

  // Parses a word over digits "1".."9"; "" and "e" denote the identity.
  WeylElt parse_word(const std::string& s) const {
    WeylElt w = identity();
    if (s == "e") return w;
    for (char c : s) {
      if (c < '1' || c >= '1' + rank())
        throw std::invalid_argument("bad generator '" + std::string(1, c) + "' in word \"" + s +
                                    "\" (rank " + std::to_string(rank()) + ")");
      w = rmult(w, c - '1');
    }
    return w;
  }

  const std::vector<IntVec>& positive_roots() const { return pos_roots_; }
  const std::vector<IntVec>& positive_coroots() const { return pos_coroots_; }
  const std::vector<Reflection>& reflections() const { return reflections_; }

  // Index into reflections() if w is a reflection, -1 otherwise.
  int reflection_index(WeylElt w) const { return refl_index_[check(w)]; }

  // All elements sorted by (length, canonical word).
  const std::vector<WeylElt>& all_sorted() const { return sorted_; }

  std::vector<WeylElt> lower_interval(WeylElt w) const {
    std::vector<WeylElt> out;
    for (WeylElt x : sorted_)
      if (leq(x, w)) out.push_back(x);
    return out;
  }

  std::vector<WeylElt> interval(WeylElt y, WeylElt w) const {
    if (!leq(y, w))
      throw std::invalid_argument("interval: lower bound " + display(y) + " is not <= " + display(w));
    std::vector<WeylElt> out;
    for (WeylElt x : sorted_)
      if (leq(y, x) && leq(x, w)) out.push_back(x);
    return out;
  }

  std::string display(WeylElt w) const { return w.id == 0 ? "e" : word(w); }

  ParabolicQuotient min_coset_reps(std::vector<int> J) const {
    std::sort(J.begin(), J.end());
    J.erase(std::unique(J.begin(), J.end()), J.end());
    for (int j : J)
      if (j < 0 || j >= rank()) throw std::invalid_argument("min_coset_reps: bad simple index");
    ParabolicQuotient q;
    q.J = J;
    // W_J by closure, tracking its longest element.
    std::vector<char> in_wj(size(), 0);
    std::vector<int> stack = {0};
    in_wj[0] = 1;
    int longest = 0;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (length_[x] > length_[longest]) longest = x;
      for (int j : J) {
        int y = rmult_[x][j];
        if (!in_wj[y]) {
          in_wj[y] = 1;
          stack.push_back(y);
        }
      }
    }
    q.w_J = {longest};
    for (WeylElt x : sorted_) {
      bool minimal = true;
      for (int j : J)
        if (right_descent(x, j)) {
          minimal = false;
          break;
        }
      if (minimal) q.min_reps.push_back(x);
    }
    return q;
  }

  WeylElt project_to_min_rep(WeylElt w, const std::vector<int>& J) const {
    bool moved = true;
    while (moved) {
      moved = false;
      for (int j : J)
        if (right_descent(w, j)) {
          w = rmult(w, j);
          moved = true;
        }
    }
    return w;
  }

  // G_L(x, y) = { t reflection : x < t x <= y }, as reflection indices in
  // enumeration order.
  std::vector<int> g_l_set(WeylElt x, WeylElt y) const {
    std::vector<int> out;
    for (std::size_t r = 0; r < reflections_.size(); ++r) {
      WeylElt tx = mult(reflections_[r].elt, x);
      if (lt(x, tx) && leq(tx, y)) out.push_back(static_cast<int>(r));
    }
    return out;
  }

  struct LiftingReport {
    bool us_below_u = false;   // whether us < u
    bool descent_case = true;  // us<u  =>  us < vs
    bool ascent_case = true;   // us>u  =>  us <= v and u <= vs
    bool us_leq_v = false;     // us <= v (both cases)
    bool all() const { return descent_case && ascent_case && us_leq_v; }
  };

  // Lifting property: requires vs < v and u < v.
  LiftingReport check_lifting(WeylElt u, WeylElt v, int s) const {
    if (!right_descent(v, s) || !lt(u, v))
      throw std::invalid_argument("check_lifting: requires vs < v and u < v");
    LiftingReport rep;
    WeylElt us = rmult(u, s), vs = rmult(v, s);
    rep.us_below_u = length(us) < length(u);
    if (rep.us_below_u)
      rep.descent_case = lt(us, vs);
    else
      rep.ascent_case = leq(us, v) && leq(u, vs);
    rep.us_leq_v = leq(us, v);
    return rep;
  }

 private:
  int check(WeylElt w) const {
    if (w.id < 0 || w.id >= size()) throw std::invalid_argument("element not in group");
    return w.id;
  }

  int lookup(const IntMat& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::logic_error("WeylGroup: matrix not in group");
    return it->second;
  }

  void build_roots() {
    int n = rank();
    // Orbit of the simple roots under simple reflections, coroots transported
    // along: if beta' = s_i(beta) then beta'^v = s_i(beta^v).
    std::map<IntVec, IntVec> coroot_of;
    std::vector<IntVec> stack;
    for (int i = 0; i < n; ++i) {
      IntVec r(n, 0), c(n, 0);
      r[i] = 1;
      c[i] = 1;
      coroot_of[r] = c;
      stack.push_back(r);
    }
    while (!stack.empty()) {
      IntVec beta = stack.back();
      stack.pop_back();
      IntVec betav = coroot_of[beta];
      for (int i = 0; i < n; ++i) {
        // s_i(beta) = beta - <beta, alphacheck_i> alpha_i
        long long pair_r = 0;
        for (int j = 0; j < n; ++j) pair_r += datum_.entry(i, j) * beta[j];
        IntVec nr = beta;
        nr[i] -= pair_r;
        // s_i(betav) = betav - <alpha_i, betav> alphacheck_i
        long long pair_c = 0;
        for (int j = 0; j < n; ++j) pair_c += datum_.entry(j, i) * betav[j];
        IntVec nc = betav;
        nc[i] -= pair_c;
        if (!coroot_of.count(nr)) {
          coroot_of[nr] = nc;
          stack.push_back(nr);
          if (coroot_of.size() > 4096)
            throw std::invalid_argument("Cartan matrix is not of finite type (root enumeration)");
        }
      }
    }
    for (const auto& [r, c] : coroot_of) {
      bool pos = true;
      for (auto v : r)
        if (v < 0) pos = false;
      if (pos) {
        pos_roots_.push_back(r);
        pos_coroots_.push_back(c);
      }
    }
  }

  void build_elements() {
    int n = rank();
    std::vector<IntMat> simple_coroot(n), simple_root(n);
    for (int i = 0; i < n; ++i) {
      IntMat c = IntMat::identity(n), r = IntMat::identity(n);
      for (int j = 0; j < n; ++j) {
        c(i, j) -= datum_.entry(j, i);  // s_i(coroot_j) = coroot_j - A[j][i] coroot_i
        r(i, j) -= datum_.entry(i, j);  // s_i(root_j)   = root_j   - A[i][j] root_i
      }
      simple_coroot[i] = c;
      simple_root[i] = r;
    }
    coroot_mat_.push_back(IntMat::identity(n));
    root_mat_.push_back(IntMat::identity(n));
    length_.push_back(0);
    index_.emplace(coroot_mat_[0], 0);
    std::vector<int> frontier = {0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier) {
        for (int i = 0; i < n; ++i) {
          IntMat nc = coroot_mat_[x] * simple_coroot[i];
          auto it = index_.find(nc);
          if (it == index_.end()) {
            int id = static_cast<int>(coroot_mat_.size());
            if (id >= kMaxElements)
              throw std::invalid_argument("group too large or not finite (cap " +
                                          std::to_string(kMaxElements) + " elements)");
            coroot_mat_.push_back(nc);
            root_mat_.push_back(root_mat_[x] * simple_root[i]);
            length_.push_back(length_[x] + 1);
            index_.emplace(coroot_mat_[id], id);
            next.push_back(id);
          }
        }
      }
      frontier = std::move(next);
    }
    int sz = size();
    rmult_.assign(sz, std::vector<int>(n));
    lmult_.assign(sz, std::vector<int>(n));
    for (int x = 0; x < sz; ++x)
      for (int i = 0; i < n; ++i) {
        rmult_[x][i] = lookup(coroot_mat_[x] * simple_coroot[i]);
        lmult_[x][i] = lookup(simple_coroot[i] * coroot_mat_[x]);
      }
    simple_.resize(n);
    for (int i = 0; i < n; ++i) simple_[i] = WeylElt{rmult_[0][i]};
    int longest = 0;
    for (int x = 0; x < sz; ++x)
      if (length_[x] > length_[longest]) longest = x;
    longest_ = {longest};
  }

  void build_words_and_inverse() {
    int sz = size();
    inverse_.assign(sz, -1);
    inverse_[0] = 0;
    // BFS order by length: inverse(ws) = s * inverse(w).
    std::vector<int> order(sz);
    for (int i = 0; i < sz; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return length_[a] < length_[b]; });
    for (int x : order) {
      if (inverse_[x] >= 0) continue;
      for (int i = 0; i < rank(); ++i) {
        int w = rmult_[x][i];
        if (length_[w] < length_[x] && inverse_[w] >= 0) {
          inverse_[x] = lmult_[inverse_[w]][i];
          break;
        }
      }
    }
    word_.assign(sz, "");
    for (int x = 0; x < sz; ++x) {
      std::string w;
      int cur = x;
      while (cur != 0) {
        for (int i = 0; i < rank(); ++i) {
          int y = lmult_[cur][i];
          if (length_[y] < length_[cur]) {
            w += static_cast<char>('1' + i);
            cur = y;
            break;
          }
        }
      }
      word_[x] = std::move(w);
    }
    sorted_.resize(sz);
    for (int i = 0; i < sz; ++i) sorted_[i] = WeylElt{i};
    std::sort(sorted_.begin(), sorted_.end(), [&](WeylElt a, WeylElt b) {
      if (length_[a.id] != length_[b.id]) return length_[a.id] < length_[b.id];
      return word_[a.id] < word_[b.id];
    });
  }

  void build_reflections() {
    int n = rank();
    refl_index_.assign(size(), -1);
    for (std::size_t r = 0; r < pos_roots_.size(); ++r) {
      const IntVec& beta = pos_roots_[r];
      const IntVec& betav = pos_coroots_[r];
      IntMat c = IntMat::identity(n);
      IntMat rm = IntMat::identity(n);
      for (int j = 0; j < n; ++j) {
        // coroot action: s_beta(coroot_j) = coroot_j - <beta, coroot_j> betav
        long long pr = 0;
        for (int i = 0; i < n; ++i) pr += datum_.entry(j, i) * beta[i];
        for (int i = 0; i < n; ++i) c(i, j) -= pr * betav[i];
        // root action: s_beta(root_j) = root_j - <root_j, betav> beta
        long long pc = 0;
        for (int i = 0; i < n; ++i) pc += datum_.entry(i, j) * betav[i];
        for (int i = 0; i < n; ++i) rm(i, j) -= pc * beta[i];
      }
      int id = lookup(c);
      if (!(root_mat_[id] == rm))
        throw std::logic_error("reflection root action disagrees with the group element");
      reflections_.push_back({WeylElt{id}, beta, betav});
      refl_index_[id] = static_cast<int>(r);
    }
  }

  void build_bruhat() {
    int sz = size();
    std::size_t words = (static_cast<std::size_t>(sz) + 63) / 64;
    leq_.assign(sz, std::vector<std::uint64_t>(words, 0));
    std::vector<int> order(sz);
    for (int i = 0; i < sz; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return length_[a] < length_[b]; });
    for (int w : order) {
      if (w == 0) {
        leq_[0][0] |= 1;
        continue;
      }
      int s = -1;
      for (int i = 0; i < rank(); ++i)
        if (length_[rmult_[w][i]] < length_[w]) {
          s = i;
          break;
        }
      int v = rmult_[w][s];
      // x <= w  iff  (xs < x ? xs <= v : x <= v)
      for (int x = 0; x < sz; ++x) {
        int xs = rmult_[x][s];
        int probe = length_[xs] < length_[x] ? xs : x;
        if ((leq_[v][static_cast<std::size_t>(probe) >> 6] >> (probe & 63)) & 1)
          leq_[w][static_cast<std::size_t>(x) >> 6] |= 1ull << (x & 63);
      }
    }
  }

  CartanDatum datum_;
  std::vector<IntVec> pos_roots_, pos_coroots_;
  std::vector<IntMat> coroot_mat_, root_mat_;
  std::vector<int> length_;
  std::vector<std::vector<int>> rmult_, lmult_;
  std::vector<int> inverse_;
  std::vector<std::string> word_;
  std::vector<WeylElt> sorted_;
  std::vector<WeylElt> simple_;
  WeylElt longest_;
  std::vector<Reflection> reflections_;
  std::vector<int> refl_index_;
  std::vector<std::vector<std::uint64_t>> leq_;
  std::unordered_map<IntMat, int, IntMatHash> index_;
};

}  // namespace mgkl
