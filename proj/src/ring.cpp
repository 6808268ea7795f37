#include "schelling/ring.hpp"

#include <stdexcept>

namespace schelling {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  // b > 0 and a >= 0 in every use below.
  return (a + b - 1) / b;
}

}  // namespace

Ring::Ring(const Scenario& scenario, std::int64_t n, std::int64_t w, std::vector<Color> colors)
    : scenario_(scenario),
      n_(n),
      w_(w),
      colors_(std::move(colors)),
      unhappy_(n),
      hopeful_(n) {
  if (w < 1) throw std::invalid_argument("ring: w must be >= 1");
  if (n < 2 * w + 1) throw std::invalid_argument("ring: need n >= 2w+1");
  if (n > INT32_MAX) throw std::invalid_argument("ring: n exceeds 2^31-1");
  if (static_cast<std::int64_t>(colors_.size()) != n)
    throw std::invalid_argument("ring: colour vector has wrong length");

  const std::int64_t W = window();
  green_happy_min_ = ceil_div(scenario_.tau_g.num() * W, scenario_.tau_g.den());
  const std::int64_t red_happy_min = ceil_div(scenario_.tau_r.num() * W, scenario_.tau_r.den());
  red_happy_maxg_ = W - red_happy_min;
  red_hopeful_min_ = green_happy_min_ - 1;
  green_hopeful_maxg_ = W - red_happy_min + 1;

  counts_.assign(n_, 0);
  status_.assign(n_, NodeStatus::Happy);
  rebuild();
}

Ring Ring::random(const Scenario& scenario, std::int64_t n, std::int64_t w, std::uint64_t seed) {
  Rng rng(seed);
  return random(scenario, n, w, rng);
}

Ring Ring::random(const Scenario& scenario, std::int64_t n, std::int64_t w, Rng& rng) {
  std::vector<Color> colors(n);
  for (std::int64_t x = 0; x < n; ++x)
    colors[x] = uniform01(rng) < scenario.rho ? Color::Green : Color::Red;
  return Ring(scenario, n, w, std::move(colors));
}

Ring Ring::uniform(const Scenario& scenario, std::int64_t n, std::int64_t w, Color c) {
  return Ring(scenario, n, w, std::vector<Color>(n, c));
}

void Ring::rebuild() {
  green_total_ = 0;
  for (std::int64_t x = 0; x < n_; ++x)
    if (colors_[x] == Color::Green) ++green_total_;

  // Window count for node 0, then slide: N(x+1) gains x+w+1 and loses x-w.
  std::int64_t g = 0;
  for (std::int64_t off = -w_; off <= w_; ++off) {
    const std::int64_t y = (off + n_) % n_;
    if (colors_[y] == Color::Green) ++g;
  }
  std::int64_t lose = n_ - w_;       // index x-w for x=0, pre-wrapped
  std::int64_t gain = w_ + 1;        // index x+w+1 for x=0
  for (std::int64_t x = 0; x < n_; ++x) {
    counts_[x] = static_cast<std::int32_t>(g);
    if (colors_[lose] == Color::Green) --g;
    if (colors_[gain] == Color::Green) ++g;
    if (++lose == n_) lose = 0;
    if (++gain == n_) gain = 0;
  }

  unhappy_.clear();
  hopeful_.clear();
  for (std::int64_t x = 0; x < n_; ++x) {
    const NodeStatus s = status_for(colors_[x], counts_[x]);
    status_[x] = s;
    if (s != NodeStatus::Happy) {
      unhappy_.insert(x);
      if (s == NodeStatus::Hopeful) hopeful_.insert(x);
    }
  }
}

void Ring::update_status(std::int64_t x) {
  const NodeStatus s = status_for(colors_[x], counts_[x]);
  const NodeStatus old = status_[x];
  if (s == old) return;
  status_[x] = s;
  if (old == NodeStatus::Happy) {
    unhappy_.insert(x);
    if (s == NodeStatus::Hopeful) hopeful_.insert(x);
  } else if (s == NodeStatus::Happy) {
    unhappy_.erase(x);
    if (old == NodeStatus::Hopeful) hopeful_.erase(x);
  } else if (s == NodeStatus::Hopeful) {
    hopeful_.insert(x);
  } else {
    hopeful_.erase(x);
  }
}

void Ring::flip(std::int64_t x) {
  const Color was = colors_[x];
  colors_[x] = other(was);
  const std::int32_t delta = was == Color::Green ? -1 : 1;
  green_total_ += delta;

  std::int64_t y = x - w_;
  if (y < 0) y += n_;
  for (std::int64_t k = 0; k < 2 * w_ + 1; ++k) {
    counts_[y] += delta;
    update_status(y);
    if (++y == n_) y = 0;
  }
}

void Ring::bulk_flip(const std::vector<std::int32_t>& nodes) {
  const std::int64_t per_flip_cost = static_cast<std::int64_t>(nodes.size()) * window();
  if (per_flip_cost <= 2 * n_) {
    for (const std::int32_t x : nodes) flip(x);
    return;
  }
  // Large batch: toggle colours, then recount everything once.
  for (const std::int32_t x : nodes) colors_[x] = other(colors_[x]);
  rebuild();
}

}  // namespace schelling
