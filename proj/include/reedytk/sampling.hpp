#pragma once

// Randomized generators for chain complexes and structured chain maps.
// Every generator is driven by SplitMix64, so a (seed) pins the whole run.

#include <vector>

#include "reedytk/chain.hpp"
#include "reedytk/diagram.hpp"
#include "reedytk/rng.hpp"

namespace reedytk {

inline FpMat random_matrix(SplitMix64& rng, uint32_t p, int rows, int cols) {
  FpMat m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, rng.below(p));
  return m;
}

// Random complex supported in [lo, hi] with degreewise dimension <= max_dim.
// Differentials are built bottom-up: each d_n has columns drawn from
// ker(d_{n-1}), so d o d = 0 holds by construction.
inline ChainComplex random_complex(SplitMix64& rng, uint32_t p, int lo, int hi, int max_dim) {
  ChainComplex X;
  X.p = p;
  for (int n = lo; n <= hi; ++n) {
    int k = int(rng.below(uint32_t(max_dim + 1)));
    if (k) X.dims[n] = k;
  }
  for (int n = lo; n <= hi; ++n) {
    if (X.dim(n) == 0 || X.dim(n - 1) == 0) continue;
    FpMat K = (n == lo || X.dim(n - 2) == 0) ? FpMat::identity(p, X.dim(n - 1))
                                             : nullspace(X.diff(n - 1));
    if (K.cols == 0) continue;
    FpMat D = mat_mul(K, random_matrix(rng, p, K.cols, X.dim(n)));
    if (!D.is_zero()) X.d[n] = D;
  }
  X.normalize();
  return X;
}

// Uniform element of the space of chain maps X -> Y.
inline ChainMap random_chain_map(SplitMix64& rng, const ChainComplex& X, const ChainComplex& Y) {
  ChainMapSpace sp = chain_map_space(X, Y);
  ChainMap f = zero_map(X, Y);
  for (auto& b : sp.basis) {
    uint32_t c = rng.below(X.p);
    if (!c) continue;
    ChainMap scaled = b;
    for (auto& [n, m] : scaled.comp) m = mat_scale(m, c);
    f = map_add(f, scaled);
  }
  return f;
}

// Cofibration out of X built by attaching `cells` copies of S^{n-1} -> D^n
// along random attaching maps (a cobase change of a sum of the generating
// injections, hence degreewise injective).
inline ChainMap random_cofibration(SplitMix64& rng, const ChainComplex& X, int cells, int lo,
                                   int hi) {
  ChainComplex A = zero_complex(X.p), B = zero_complex(X.p);
  ChainMap incl = zero_map(A, B);
  for (int c = 0; c < cells; ++c) {
    int n = lo + int(rng.below(uint32_t(hi - lo + 1)));
    ChainComplex s = sphere(X.p, n - 1), d = disc(X.p, n);
    ChainMap io;
    io.src = s;
    io.dst = d;
    io.comp[n - 1] = FpMat::identity(X.p, 1);
    // direct-sum the running inclusion with this cell's boundary inclusion
    ChainComplex A2 = direct_sum(A, s), B2 = direct_sum(B, d);
    // next = [incl 0; 0 io] relative to the sum decompositions
    ChainMap next = zero_map(A2, B2);
    for (auto& [deg, k] : A2.dims) {
      if (B2.dim(deg) == 0) continue;
      FpMat m(X.p, B2.dim(deg), k);
      if (A.dim(deg) && B.dim(deg)) put_block(m, 0, 0, incl.at(deg));
      if (s.dim(deg) && d.dim(deg)) put_block(m, B.dim(deg), A.dim(deg), io.at(deg));
      if (!m.is_zero()) next.comp[deg] = m;
    }
    A = A2;
    B = B2;
    incl = next;
  }
  ChainMap attach = random_chain_map(rng, A, X);
  PushoutData P = pushout(attach, incl);
  return P.from_first;  // X -> X with cells attached
}

// Fibration onto Y, produced by dualizing a random cofibration out of the
// dual complex (duality swaps injections and surjections).
inline ChainMap random_fibration(SplitMix64& rng, const ChainComplex& Y, int cells, int lo,
                                 int hi) {
  ChainMap c = random_cofibration(rng, dual_complex(Y), cells, lo, hi);
  ChainMap f = dual_map(c);  // dual(X') -> dual(dual(Y))
  f.dst = Y;                 // double dual is literally the identity layout
  return f;
}

// Invertible chain self-map of X (identity plus a random endomorphism,
// rejection-sampled for degreewise invertibility).
inline ChainMap random_automorphism(SplitMix64& rng, const ChainComplex& X, int tries = 16) {
  ChainMap best = identity_map(X);
  for (int t = 0; t < tries; ++t) {
    ChainMap g = map_add(identity_map(X), random_chain_map(rng, X, X));
    bool ok = true;
    for (auto& [n, k] : X.dims)
      if (!is_invertible(g.at(n))) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return best;
}

// Weak equivalence X -> X + (a few discs), generally neither injective nor
// surjective: inclusion, then an automorphism of the padded complex, then
// projection away from a second contractible summand.
inline ChainMap random_weak_equivalence(SplitMix64& rng, const ChainComplex& X, int lo, int hi) {
  auto discs = [&](int count) {
    ChainComplex D = zero_complex(X.p);
    for (int c = 0; c < count; ++c) {
      int n = lo + int(rng.below(uint32_t(hi - lo + 1)));
      D = direct_sum(D, disc(X.p, n));
    }
    return D;
  };
  ChainComplex Da = discs(int(rng.below(3))), Db = discs(int(rng.below(3)));
  ChainComplex keep = direct_sum(X, Da);
  ChainComplex M = direct_sum(keep, Db);
  ChainMap incl = compose_maps(sum_inclusion_left(keep, Db), sum_inclusion_left(X, Da));
  ChainMap g = random_automorphism(rng, M);
  ChainMap proj = zero_map(M, keep);
  for (auto& [n, k] : keep.dims) {
    FpMat m(X.p, k, M.dim(n));
    put_block(m, 0, 0, FpMat::identity(X.p, k));
    proj.comp[n] = m;
  }
  return compose_maps(proj, compose_maps(g, incl));
}

// -------- diagram-level samplers --------

// Uniform element of the space of natural maps X -> Y.
inline DiagramMap random_natural_map(SplitMix64& rng, const Diagram& X, const Diagram& Y) {
  DiagramMap f;
  f.src = X;
  f.dst = Y;
  for (size_t a = 0; a < X.objects.size(); ++a)
    f.comp.push_back(zero_map(X.objects[a], Y.objects[a]));
  for (const DiagramMap& b : natural_map_basis(X, Y)) {
    uint32_t c = rng.below(X.p);
    if (!c) continue;
    for (size_t a = 0; a < f.comp.size(); ++a) {
      ChainMap scaled = b.comp[a];
      for (auto& [n, m] : scaled.comp) m = mat_scale(m, c);
      f.comp[a] = map_add(f.comp[a], scaled);
    }
  }
  return f;
}

// Random diagram over A: a sum of representable copowers on random complexes
// and constant pieces, optionally glued by a pushout along random natural
// maps.  Functoriality holds by construction; the result is generally
// neither cofibrant nor fibrant.
inline Diagram random_diagram(SplitMix64& rng, const ReedyCategory& A, Variance v, uint32_t p,
                              int lo, int hi, int max_dim) {
  if (v == Variance::covariant) {
    Diagram O = opposite_view(random_diagram(rng, opposite_reedy(A), Variance::presheaf, p, lo,
                                             hi, max_dim));
    O.index = A;  // the double opposite has identical object and morphism tables
    return O;
  }
  auto piece = [&]() {
    ChainComplex X = random_complex(rng, p, lo, hi, max_dim);
    if (rng.chance(1, 3)) return constant_diagram(A, Variance::presheaf, X);
    return boxdot(A, yoneda(A.cat, int(rng.below(uint32_t(A.cat.n_obj())))).pre, X);
  };
  Diagram D = piece();
  if (rng.chance(1, 2)) D = diagram_pushout(from_zero(D), from_zero(piece())).obj;
  if (rng.chance(1, 2)) {
    Diagram W = piece();
    DiagramMap u = random_natural_map(rng, W, D);
    DiagramMap w = random_natural_map(rng, W, piece());
    D = diagram_pushout(u, w).obj;
  }
  return D;
}

// Reedy cofibration out of X: a composite of cobase changes of corner maps
// on chain-level (trivial) cofibration cells.
inline DiagramMap random_reedy_cofibration(SplitMix64& rng, const Diagram& X, bool trivial) {
  if (X.variance == Variance::covariant) {
    DiagramMap o = opposite_view_map(random_reedy_cofibration(rng, opposite_view(X), trivial));
    o.src = X;
    o.dst.index = X.index;
    return o;
  }
  const ReedyCategory& A = X.index;
  auto cell = [&]() -> ChainMap {
    if (trivial) {
      if (rng.chance(1, 2)) return zero_map(zero_complex(X.p), disc(X.p, 1));
      ChainComplex X0 = random_complex(rng, X.p, 0, 1, 2);
      return sum_inclusion_left(X0, disc(X.p, 1));
    }
    if (rng.chance(1, 2)) return zero_map(zero_complex(X.p), sphere(X.p, int(rng.below(2))));
    ChainComplex X0 = random_complex(rng, X.p, 0, 1, 2);
    return random_cofibration(rng, X0, 1, 1, 1);
  };
  DiagramMap out;
  Diagram cur = X;
  int steps = 1 + int(rng.below(2));
  for (int s = 0; s < steps; ++s) {
    CornerMap c = corner_map(A, int(rng.below(uint32_t(A.cat.n_obj()))), cell());
    DiagramMap r = random_natural_map(rng, c.map.src, cur);
    DiagramPushout P = diagram_pushout(r, c.map);
    out = s == 0 ? P.from_first : compose_diagram_maps(P.from_first, out);
    cur = P.obj;
  }
  return out;
}

// Reedy fibration onto Y, by dualizing a Reedy cofibration out of the dual
// diagram (duality exchanges the latching and matching conditions).
inline DiagramMap random_reedy_fibration(SplitMix64& rng, const Diagram& Y, bool trivial) {
  DiagramMap q = dual_diagram_map(random_reedy_cofibration(rng, dual_diagram(Y), trivial));
  q.dst = Y;  // the double dual is literally the identity layout
  return q;
}

}  // namespace reedytk
