#pragma once

#include <cstdint>
#include <vector>

#include "schelling/rational.hpp"
#include "schelling/rng.hpp"
#include "schelling/scenario.hpp"

namespace schelling {

enum class Color : std::uint8_t { Red = 0, Green = 1 };

inline Color other(Color c) { return c == Color::Green ? Color::Red : Color::Green; }

// A node is Happy when its own-colour share of the neighbourhood meets its
// tolerance.  An unhappy node is Hopeful when switching colour would make it
// happy, otherwise UnhappyHopeless.
enum class NodeStatus : std::uint8_t { Happy = 0, UnhappyHopeless = 1, Hopeful = 2 };

// Set of node indices with O(1) insert/erase/membership and O(1) uniform
// sampling (swap-remove over a dense array).  Indices are stored as int32;
// rings are capped at 2^31-1 nodes accordingly.
class IndexedSet {
 public:
  explicit IndexedSet(std::int64_t universe) : pos_(universe, -1) {}

  bool contains(std::int64_t x) const { return pos_[x] >= 0; }
  std::int64_t size() const { return static_cast<std::int64_t>(items_.size()); }
  bool empty() const { return items_.empty(); }
  std::int64_t at(std::int64_t i) const { return items_[i]; }
  const std::vector<std::int32_t>& items() const { return items_; }

  void insert(std::int64_t x) {
    if (pos_[x] >= 0) return;
    pos_[x] = static_cast<std::int32_t>(items_.size());
    items_.push_back(static_cast<std::int32_t>(x));
  }

  void erase(std::int64_t x) {
    const std::int32_t p = pos_[x];
    if (p < 0) return;
    const std::int32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = -1;
  }

  void clear() {
    for (std::int32_t x : items_) pos_[x] = -1;
    items_.clear();
  }

  // Uniform over current members; consumes words from rng.
  std::int64_t sample(Rng& rng) const {
    return items_[uniform_below(rng, items_.size())];
  }

 private:
  std::vector<std::int32_t> items_;
  std::vector<std::int32_t> pos_;
};

// Ring of n nodes, neighbourhood N(x) = [x-w, x+w] mod n (2w+1 nodes,
// including x itself).  The ring keeps per-node green counts over N(x),
// per-node status, and index sets of unhappy and hopeful nodes, all updated
// exactly under flips.  Happiness comparisons are integer-only: a green node
// is happy iff den_g * G(N(x)) >= num_g * (2w+1), and similarly for red, so
// tolerance boundaries land precisely where the rationals say.
class Ring {
 public:
  Ring(const Scenario& scenario, std::int64_t n, std::int64_t w, std::vector<Color> colors);

  // Independent colour draws: green with probability scenario.rho.  Node 0 is
  // drawn first, then 1, 2, ...  (one uniform01 word per node).
  static Ring random(const Scenario& scenario, std::int64_t n, std::int64_t w, std::uint64_t seed);
  static Ring random(const Scenario& scenario, std::int64_t n, std::int64_t w, Rng& rng);

  static Ring uniform(const Scenario& scenario, std::int64_t n, std::int64_t w, Color c);

  std::int64_t n() const { return n_; }
  std::int64_t w() const { return w_; }
  std::int64_t window() const { return 2 * w_ + 1; }
  const Scenario& scenario() const { return scenario_; }

  Color color(std::int64_t x) const { return colors_[x]; }
  const std::vector<Color>& colors() const { return colors_; }
  std::int64_t green_total() const { return green_total_; }

  // G(N(x)): number of green nodes in the closed neighbourhood of x.
  std::int64_t neighborhood_greens(std::int64_t x) const { return counts_[x]; }

  NodeStatus status(std::int64_t x) const { return status_[x]; }
  const IndexedSet& unhappy() const { return unhappy_; }
  const IndexedSet& hopeful() const { return hopeful_; }

  // Fraction of N(x) that is green, as an exact rational G/(2w+1).
  Rational local_green_density(std::int64_t x) const {
    return Rational(counts_[x], window());
  }

  // Toggle the colour of x and repair counts, statuses and sets for the
  // 2w+1 affected nodes.  O(w).
  void flip(std::int64_t x);

  // Flip every node in `nodes` (duplicates not allowed).  Equivalent to
  // calling flip() on each in order, but switches to a full O(n) recount when
  // the batch is large enough that per-flip repair would cost more.
  void bulk_flip(const std::vector<std::int32_t>& nodes);

  // Status a node of colour c would have with G greens in its neighbourhood.
  NodeStatus status_for(Color c, std::int64_t greens) const {
    if (c == Color::Green) {
      if (greens >= green_happy_min_) return NodeStatus::Happy;
      return greens <= green_hopeful_maxg_ ? NodeStatus::Hopeful : NodeStatus::UnhappyHopeless;
    }
    if (greens <= red_happy_maxg_) return NodeStatus::Happy;
    return greens >= red_hopeful_min_ ? NodeStatus::Hopeful : NodeStatus::UnhappyHopeless;
  }

 private:
  void rebuild();
  void update_status(std::int64_t x);

  Scenario scenario_;
  std::int64_t n_;
  std::int64_t w_;
  std::int64_t green_total_ = 0;

  // Integer cutoffs equivalent to the rational comparisons, precomputed once:
  //   green happy    iff G >= green_happy_min_
  //   red   happy    iff G <= red_happy_maxg_          (i.e. R >= red minimum)
  //   red   hopeful  iff G >= red_hopeful_min_         (G+1 meets green bar)
  //   green hopeful  iff G <= green_hopeful_maxg_      (R+1 meets red bar)
  std::int64_t green_happy_min_;
  std::int64_t red_happy_maxg_;
  std::int64_t red_hopeful_min_;
  std::int64_t green_hopeful_maxg_;

  std::vector<Color> colors_;
  std::vector<std::int32_t> counts_;
  std::vector<NodeStatus> status_;
  IndexedSet unhappy_;
  IndexedSet hopeful_;
};

}  // namespace schelling
