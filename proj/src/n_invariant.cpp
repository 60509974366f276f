#include <algorithm>
#include <functional>

#include "bstone/error.hpp"
#include "bstone/lp.hpp"
#include "bstone/random.hpp"

namespace bstone {

namespace {

std::vector<std::size_t> active_blocks(const BlockElement& z, const Tolerance& tol) {
  const auto mask = central_blocks(z, tol);
  std::vector<std::size_t> active;
  for (std::size_t b = 0; b < mask.size(); ++b) {
    if (mask[b]) active.push_back(b);
  }
  if (active.empty()) throw PreconditionError("N(z) is only defined for z != 0");
  return active;
}

struct Candidate {
  BlockElement left;
  BlockElement right;
};

}  // namespace

int n_invariant(const AlgebraShape& shape, const BlockElement& z, const Tolerance& tol) {
  require_same_shape(shape, z.shape(), "n_invariant");
  int best = 0;
  for (std::size_t b : active_blocks(z, tol)) {
    best = best == 0 ? shape.block(b) : std::min(best, shape.block(b));
  }
  return best;
}

NInvariantSearch n_invariant_search(const AlgebraShape& shape, const BlockElement& z,
                                    std::uint64_t seed, int random_frames, const Tolerance& tol) {
  require_same_shape(shape, z.shape(), "n_invariant_search");
  const auto active = active_blocks(z, tol);

  int bound = 0;
  for (std::size_t b : active) bound = std::max(bound, shape.block(b));
  bound += 1;

  // Frames: per active block a pair (U, V); candidates are
  // sum_b U_b e_{r_b c_b} V_b^* over all index choices.
  Rng rng(seed);
  std::vector<std::vector<std::pair<Matrix, Matrix>>> frames;
  for (int f = 0; f <= random_frames; ++f) {
    std::vector<std::pair<Matrix, Matrix>> frame;
    for (std::size_t b : active) {
      const int n = shape.block(b);
      if (f == 0) {
        frame.emplace_back(Matrix::Identity(n, n), Matrix::Identity(n, n));
      } else {
        Matrix u = haar_unitary(n, rng);
        Matrix v = haar_unitary(n, rng);
        frame.emplace_back(std::move(u), std::move(v));
      }
    }
    frames.push_back(std::move(frame));
  }

  std::vector<Candidate> cands;
  for (const auto& frame : frames) {
    std::vector<int> idx(active.size() * 2, 0);
    while (true) {
      BlockElement rho(shape);
      for (std::size_t a = 0; a < active.size(); ++a) {
        const auto& [u, v] = frame[a];
        rho.block(active[a]) = u.col(idx[2 * a]) * v.col(idx[2 * a + 1]).adjoint();
      }
      const auto cz = central_support(rho, tol);
      if ((cz - z).frobenius_norm() > tol.eps_abs) {
        throw NumericsError("N(z) search produced a candidate with the wrong central support");
      }
      auto s = supports(rho, tol);
      cands.push_back({std::move(s.left), std::move(s.right)});

      // odometer over (row, col) per active block
      std::size_t pos = 0;
      while (pos < idx.size()) {
        const int n = shape.block(active[pos / 2]);
        if (++idx[pos] < n) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
  }

  const double thr = orthogonality_threshold(tol);
  const std::size_t m = cands.size();
  std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      bool ok = true;
      for (std::size_t b : active) {
        if ((cands[i].left.block(b) * cands[j].left.block(b)).norm() > thr ||
            (cands[i].right.block(b) * cands[j].right.block(b)).norm() > thr) {
          ok = false;
          break;
        }
      }
      adj[i][j] = adj[j][i] = ok ? 1 : 0;
    }
  }

  int best = 0;
  std::vector<std::size_t> clique;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    best = std::max(best, static_cast<int>(clique.size()));
    if (best >= bound) return;
    for (std::size_t i = start; i < m; ++i) {
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t c) { return adj[c][i] != 0; })) {
        clique.push_back(i);
        extend(i + 1);
        clique.pop_back();
        if (best >= bound) return;
      }
    }
  };
  extend(0);

  return {best, bound, m};
}

}  // namespace bstone
