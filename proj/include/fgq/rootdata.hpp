#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/linalg.hpp"
#include "fgq/rational.hpp"

// Root systems, weight lattices and Weyl chamber geometry for the supported
// compact connected types: A1..A4, B2/B3, C2/C3, D4, tori T1..T4, and
// products of these. Weights live in fundamental-weight coordinates (plain
// character-lattice coordinates on torus factors); the invariant form is
// normalised so short roots have squared length 2 per simple factor and torus
// blocks carry the identity Gram matrix.

namespace fgq {

struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}

  int rank() const { return static_cast<int>(coords.size()); }
  int operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
  friend bool operator!=(const Weight& a, const Weight& b) { return a.coords != b.coords; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }

  friend Weight operator+(const Weight& a, const Weight& b) {
    Weight r = a;
    for (int i = 0; i < r.rank(); ++i) r[i] += b[i];
    return r;
  }
  friend Weight operator-(const Weight& a, const Weight& b) {
    Weight r = a;
    for (int i = 0; i < r.rank(); ++i) r[i] -= b[i];
    return r;
  }
  friend Weight operator*(int n, const Weight& a) {
    Weight r = a;
    for (int i = 0; i < r.rank(); ++i) r[i] *= n;
    return r;
  }
  friend Weight operator-(const Weight& a) { return -1 * a; }
};

inline Weight zeroWeight(int rank) { return Weight(std::vector<int>(static_cast<std::size_t>(rank), 0)); }

inline Weight concatWeights(const Weight& a, const Weight& b) {
  Weight r = a;
  r.coords.insert(r.coords.end(), b.coords.begin(), b.coords.end());
  return r;
}

inline Weight sliceWeight(const Weight& w, int from, int len) {
  return Weight(std::vector<int>(w.coords.begin() + from, w.coords.begin() + from + len));
}

inline std::string toString(const Weight& w) {
  std::string s = "[";
  for (int i = 0; i < w.rank(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

struct RootDatum {
  std::string label;
  int rank = 0;
  // Full rank x rank matrix; row i is the i-th coordinate's pairing against
  // the simple coroots. Torus coordinates contribute zero rows and columns.
  std::vector<std::vector<int>> cartan;
  std::vector<Weight> simpleRoots;  // row per simple root, fundamental coords
  std::vector<int> simpleCoords;    // coordinate index carried by each simple root
  std::vector<int> rootLengthHalf;  // d_i = (alpha_i, alpha_i)/2 per simple root
  std::vector<bool> semisimpleCoord;
  RatMat form;         // Gram matrix of the invariant form on the weight lattice
  RatMat formInverse;
  Weight weylVector;   // rho: 1 on semisimple coordinates, 0 on torus ones
  std::vector<Weight> positiveRoots;

  bool isTorus() const { return simpleRoots.empty(); }
};

inline bool sameDatum(const RootDatum& a, const RootDatum& b) {
  return a.rank == b.rank && a.cartan == b.cartan;
}

inline std::string datumKey(const RootDatum& rd) {
  std::string key = std::to_string(rd.rank);
  for (const auto& row : rd.cartan)
    for (int v : row) key += "," + std::to_string(v);
  return key;
}

inline void requireRank(const RootDatum& rd, const Weight& w, const char* where) {
  if (w.rank() != rd.rank)
    fail(errs::DimensionMismatch,
         std::string(where) + ": weight rank " + std::to_string(w.rank()) +
             " vs datum rank " + std::to_string(rd.rank));
}

inline Rational innerProduct(const RootDatum& rd, const Weight& a, const Weight& b) {
  requireRank(rd, a, "innerProduct");
  requireRank(rd, b, "innerProduct");
  Rational s(0);
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j)
      s += Rational(a[i]) * rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Rational(b[j]);
  return s;
}

inline Rational normSq(const RootDatum& rd, const Weight& w) { return innerProduct(rd, w, w); }

inline bool isDominant(const RootDatum& rd, const Weight& w) {
  requireRank(rd, w, "isDominant");
  for (int i = 0; i < rd.rank; ++i)
    if (rd.semisimpleCoord[static_cast<std::size_t>(i)] && w[i] < 0) return false;
  return true;
}

inline void requireDominant(const RootDatum& rd, const Weight& w, const char* where) {
  if (!isDominant(rd, w))
    fail(errs::NotDominant, std::string(where) + ": " + toString(w));
}

// s_i(w) = w - <w, alpha_i^vee> alpha_i.
inline Weight simpleReflect(const RootDatum& rd, int i, const Weight& w) {
  const int c = w[rd.simpleCoords[static_cast<std::size_t>(i)]];
  if (c == 0) return w;
  return w - c * rd.simpleRoots[static_cast<std::size_t>(i)];
}

// Dominant representative of the Weyl orbit, plus the determinant of the
// Weyl element applied to reach it.
inline std::pair<Weight, int> dominate(const RootDatum& rd, Weight w) {
  int parity = 1;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < rd.simpleRoots.size(); ++i) {
      if (w[rd.simpleCoords[i]] < 0) {
        w = simpleReflect(rd, static_cast<int>(i), w);
        parity = -parity;
        moved = true;
      }
    }
  }
  return {w, parity};
}

inline std::set<Weight> weylOrbit(const RootDatum& rd, const Weight& w) {
  requireRank(rd, w, "weylOrbit");
  std::set<Weight> orbit{w};
  std::queue<Weight> todo;
  todo.push(w);
  while (!todo.empty()) {
    Weight v = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < rd.simpleRoots.size(); ++i) {
      Weight u = simpleReflect(rd, static_cast<int>(i), v);
      if (orbit.insert(u).second) todo.push(u);
    }
  }
  return orbit;
}

// rho-shifted straightening: sigma(w + rho) = w' + rho with w' dominant and
// sign = det(sigma), or sign 0 when w + rho lies on a chamber wall.
inline std::pair<Weight, int> straighten(const RootDatum& rd, const Weight& w) {
  requireRank(rd, w, "straighten");
  auto [rep, parity] = dominate(rd, w + rd.weylVector);
  for (std::size_t i = 0; i < rd.simpleRoots.size(); ++i)
    if (rep[rd.simpleCoords[i]] == 0) return {rep - rd.weylVector, 0};
  return {rep - rd.weylVector, parity};
}

// -w0(lambda): the highest weight of the contragredient representation.
inline Weight dualWeight(const RootDatum& rd, const Weight& w) {
  requireDominant(rd, w, "dualWeight");
  return dominate(rd, -w).first;
}

// All dominant weights with normSq <= radius, in lexicographic order.
inline std::vector<Weight> dominantWeightsUpTo(const RootDatum& rd, const Rational& radius) {
  std::vector<Weight> out;
  if (radius < Rational(0)) return out;
  std::vector<long long> bound(static_cast<std::size_t>(rd.rank));
  for (int i = 0; i < rd.rank; ++i)
    bound[static_cast<std::size_t>(i)] =
        isqrtBound(radius * rd.formInverse[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
  Weight w = zeroWeight(rd.rank);
  // Depth-first sweep over the bounding box; the box is tiny at desk scale.
  std::function<void(int)> sweep = [&](int i) {
    if (i == rd.rank) {
      if (normSq(rd, w) <= radius) out.push_back(w);
      return;
    }
    const long long b = bound[static_cast<std::size_t>(i)];
    const long long lo = rd.semisimpleCoord[static_cast<std::size_t>(i)] ? 0 : -b;
    for (long long v = lo; v <= b; ++v) {
      w[i] = static_cast<int>(v);
      sweep(i + 1);
    }
    w[i] = 0;
  };
  sweep(0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

struct SimpleBlock {
  std::vector<std::vector<int>> cartan;  // block Cartan matrix, row = root
  std::vector<int> lengthHalf;           // d_i per simple root
};

inline SimpleBlock simpleBlock(char type, int n) {
  SimpleBlock b;
  auto chain = [&](int len) {
    b.cartan.assign(static_cast<std::size_t>(len), std::vector<int>(static_cast<std::size_t>(len), 0));
    for (int i = 0; i < len; ++i) {
      b.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      if (i + 1 < len) {
        b.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] = -1;
        b.cartan[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = -1;
      }
    }
  };
  switch (type) {
    case 'A':
      if (n < 1 || n > 4) fail(errs::UnknownType, "A" + std::to_string(n));
      chain(n);
      b.lengthHalf.assign(static_cast<std::size_t>(n), 1);
      break;
    case 'B':
      if (n < 2 || n > 3) fail(errs::UnknownType, "B" + std::to_string(n));
      chain(n);
      // last root short; <alpha_{n-1}, alpha_n^vee> = -2
      b.cartan[static_cast<std::size_t>(n - 2)][static_cast<std::size_t>(n - 1)] = -2;
      b.lengthHalf.assign(static_cast<std::size_t>(n), 2);
      b.lengthHalf.back() = 1;
      break;
    case 'C':
      if (n < 2 || n > 3) fail(errs::UnknownType, "C" + std::to_string(n));
      chain(n);
      // last root long; <alpha_n, alpha_{n-1}^vee> = -2
      b.cartan[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 2)] = -2;
      b.lengthHalf.assign(static_cast<std::size_t>(n), 1);
      b.lengthHalf.back() = 2;
      break;
    case 'D':
      if (n != 4) fail(errs::UnknownType, "D" + std::to_string(n));
      b.cartan.assign(4, std::vector<int>(4, 0));
      for (int i = 0; i < 4; ++i) b.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
      for (int leaf : {0, 2, 3}) {
        b.cartan[static_cast<std::size_t>(leaf)][1] = -1;
        b.cartan[1][static_cast<std::size_t>(leaf)] = -1;
      }
      b.lengthHalf.assign(4, 1);
      break;
    case 'T':
      if (n < 1 || n > 4) fail(errs::UnknownType, "T" + std::to_string(n));
      break;  // no roots
    default:
      fail(errs::UnknownType, std::string(1, type) + std::to_string(n));
  }
  return b;
}

inline void finishDatum(RootDatum& rd);

}  // namespace detail

// Direct sum of two root data; rank adds, simple roots concatenate in block
// form, and the invariant forms combine block-diagonally.
inline RootDatum productDatum(const RootDatum& a, const RootDatum& b) {
  RootDatum rd;
  rd.label = a.label + "x" + b.label;
  rd.rank = a.rank + b.rank;
  rd.cartan.assign(static_cast<std::size_t>(rd.rank), std::vector<int>(static_cast<std::size_t>(rd.rank), 0));
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j)
      rd.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j)
      rd.cartan[static_cast<std::size_t>(a.rank + i)][static_cast<std::size_t>(a.rank + j)] =
          b.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const Weight zeroA = zeroWeight(a.rank), zeroB = zeroWeight(b.rank);
  for (std::size_t s = 0; s < a.simpleRoots.size(); ++s) {
    rd.simpleRoots.push_back(concatWeights(a.simpleRoots[s], zeroB));
    rd.simpleCoords.push_back(a.simpleCoords[s]);
    rd.rootLengthHalf.push_back(a.rootLengthHalf[s]);
  }
  for (std::size_t s = 0; s < b.simpleRoots.size(); ++s) {
    rd.simpleRoots.push_back(concatWeights(zeroA, b.simpleRoots[s]));
    rd.simpleCoords.push_back(a.rank + b.simpleCoords[s]);
    rd.rootLengthHalf.push_back(b.rootLengthHalf[s]);
  }
  rd.semisimpleCoord.reserve(static_cast<std::size_t>(rd.rank));
  rd.semisimpleCoord.insert(rd.semisimpleCoord.end(), a.semisimpleCoord.begin(), a.semisimpleCoord.end());
  rd.semisimpleCoord.insert(rd.semisimpleCoord.end(), b.semisimpleCoord.begin(), b.semisimpleCoord.end());
  rd.form.assign(static_cast<std::size_t>(rd.rank), RatVec(static_cast<std::size_t>(rd.rank), Rational(0)));
  for (int i = 0; i < a.rank; ++i)
    for (int j = 0; j < a.rank; ++j)
      rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          a.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  for (int i = 0; i < b.rank; ++i)
    for (int j = 0; j < b.rank; ++j)
      rd.form[static_cast<std::size_t>(a.rank + i)][static_cast<std::size_t>(a.rank + j)] =
          b.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  detail::finishDatum(rd);
  return rd;
}

// Parses "A2", "T3", products like "A1xT1" or "A1 x A1".
inline RootDatum buildRootDatum(const std::string& label) {
  std::string s;
  for (char c : label)
    if (c != ' ') s += c;
  if (s.empty()) fail(errs::UnknownType, "empty label");

  // split on 'x' separators (type letters are upper case)
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  std::optional<RootDatum> acc;
  for (const auto& part : parts) {
    if (part.size() < 2 || part[0] < 'A' || part[0] > 'Z')
      fail(errs::UnknownType, label);
    int n = 0;
    for (std::size_t i = 1; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') fail(errs::UnknownType, label);
      n = 10 * n + (part[i] - '0');
    }
    detail::SimpleBlock block = detail::simpleBlock(part[0], n);
    RootDatum rd;
    rd.label = part;
    rd.rank = n;
    rd.cartan.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    const bool torus = block.cartan.empty();
    if (!torus) rd.cartan = block.cartan;
    for (int i = 0; i < n && !torus; ++i) {
      rd.simpleRoots.push_back(Weight(std::vector<int>(block.cartan[static_cast<std::size_t>(i)].begin(),
                                                       block.cartan[static_cast<std::size_t>(i)].end())));
      rd.simpleCoords.push_back(i);
      rd.rootLengthHalf.push_back(block.lengthHalf[static_cast<std::size_t>(i)]);
    }
    rd.semisimpleCoord.assign(static_cast<std::size_t>(n), !torus);
    if (torus) {
      rd.form = ratIdentity(static_cast<std::size_t>(n));
    } else {
      // G_{ij} = (omega_i, omega_j) = (A^{-1})_{ji} * d_i
      RatMat a(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              Rational(block.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      RatMat ainv = ratInverse(a);
      rd.form.assign(static_cast<std::size_t>(n), RatVec(static_cast<std::size_t>(n)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          rd.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              ainv[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
              Rational(block.lengthHalf[static_cast<std::size_t>(i)]);
    }
    detail::finishDatum(rd);
    acc = acc ? productDatum(*acc, rd) : rd;
  }
  RootDatum result = *acc;
  result.label = s;  // keep the user's spelling, minus spaces
  return result;
}

namespace detail {

inline void finishDatum(RootDatum& rd) {
  rd.formInverse = ratInverse(rd.form);
  std::vector<int> rho(static_cast<std::size_t>(rd.rank), 0);
  for (int i = 0; i < rd.rank; ++i)
    if (rd.semisimpleCoord[static_cast<std::size_t>(i)]) rho[static_cast<std::size_t>(i)] = 1;
  rd.weylVector = Weight(rho);

  // All roots are Weyl conjugates of simple roots; positives pair > 0 with rho.
  std::set<Weight> roots;
  for (const auto& alpha : rd.simpleRoots) {
    auto orbit = weylOrbit(rd, alpha);
    roots.insert(orbit.begin(), orbit.end());
  }
  rd.positiveRoots.clear();
  for (const auto& beta : roots)
    if (innerProduct(rd, beta, rd.weylVector) > Rational(0)) rd.positiveRoots.push_back(beta);
  std::sort(rd.positiveRoots.begin(), rd.positiveRoots.end());
}

}  // namespace detail

}  // namespace fgq
