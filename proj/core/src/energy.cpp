#include "clockxy/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include "clockxy/kahan.hpp"
#include "clockxy/runtime.hpp"

namespace clockxy {

namespace runtime {
namespace {
std::atomic<int> g_threads{1};
}
void set_thread_count(int n) { g_threads.store(std::max(1, n)); }
int thread_count() { return g_threads.load(); }
}  // namespace runtime

namespace {

constexpr std::size_t kChunk = 1 << 13;

// Deterministic reduction: fixed chunks, per-chunk Kahan, merged in chunk
// order. Bit-stable for any worker count.
template <typename PerBond>
KahanSum reduce_bonds(const std::vector<Bond>& bonds, PerBond per_bond) {
  std::size_t n = bonds.size();
  std::size_t chunks = (n + kChunk - 1) / kChunk;
  int workers = std::min<int>(runtime::thread_count(), static_cast<int>(std::max<std::size_t>(chunks, 1)));

  std::vector<KahanSum> partial(chunks);
  auto run_chunk = [&](std::size_t c) {
    KahanSum acc;
    std::size_t lo = c * kChunk;
    std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) per_bond(bonds[i], acc);
    partial[c] = acc;
  };

  if (workers <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  KahanSum total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

// Chord^2 between states k apart: 4 sin^2(k*theta/2), tabulated unless the
// circle is too fine for a table to pay off.
class Chord2 {
 public:
  explicit Chord2(const DiscreteCircle& c) : theta_(c.theta) {
    if (c.n_states <= 1 << 22) {
      table_.resize(static_cast<std::size_t>(c.n_states / 2) + 1);
      for (std::size_t k = 0; k < table_.size(); ++k) table_[k] = compute(static_cast<int>(k));
    }
  }
  double operator()(int sep) const {
    return table_.empty() ? compute(sep) : table_[static_cast<std::size_t>(sep)];
  }

 private:
  double compute(int sep) const {
    double s = std::sin(0.5 * sep * theta_);
    return 4.0 * s * s;
  }
  double theta_;
  std::vector<double> table_;
};

struct BondFilter {
  const LatticeDomain* dom;
  const std::optional<Shape>* region;
  bool operator()(const Bond& b) const {
    if (!region->has_value()) return true;
    return (*region)->contains(dom->position(b.a)) && (*region)->contains(dom->position(b.b));
  }
};

}  // namespace

EnergyBreakdown xy_energy(const SpinField& field, const std::optional<Shape>& region) {
  const auto& dom = *field.domain;
  const double eps2 = dom.epsilon() * dom.epsilon();
  Chord2 chord2(field.circle);
  BondFilter in_region{&dom, &region};

  std::atomic<std::int64_t> count{0};
  std::vector<double> chunk_max((dom.bonds().size() + kChunk - 1) / kChunk + 1, 0.0);

  KahanSum total = reduce_bonds(dom.bonds(), [&](const Bond& b, KahanSum& acc) {
    if (!in_region(b)) return;
    int sep = field.circle.state_separation(field.states[b.a], field.states[b.b]);
    double c2 = chord2(sep);
    acc.add(eps2 * c2);
    count.fetch_add(1, std::memory_order_relaxed);
    std::size_t chunk = static_cast<std::size_t>(&b - dom.bonds().data()) / kChunk;
    if (c2 > chunk_max[chunk]) chunk_max[chunk] = c2;
  });

  EnergyBreakdown out;
  out.xy_total = total.value();
  out.bond_count = count.load();
  out.per_bond_max = chunk_max.empty() ? 0.0 : *std::max_element(chunk_max.begin(), chunk_max.end());
  out.region = region ? region->describe() : dom.shape().describe();
  return out;
}

double rescaled_energy(const SpinField& field, double theta, const std::optional<Shape>& region) {
  if (!(theta > 0.0)) throw std::invalid_argument("rescaled_energy: theta must be > 0");
  return xy_energy(field, region).xy_total / (field.domain->epsilon() * theta);
}

double rescaled_energy(const SpinField& field) {
  return rescaled_energy(field, field.circle.theta);
}

double excess_energy(const SpinField& field, double theta, int M) {
  if (M < 0) throw std::invalid_argument("excess_energy: M must be >= 0");
  double eps = field.domain->epsilon();
  return rescaled_energy(field, theta) - kTwoPi * M * abs_log(eps) * (eps / theta);
}

double geodesic_bond_sum(const SpinField& field, const std::optional<Shape>& region) {
  const auto& dom = *field.domain;
  const double eps = dom.epsilon();
  const double theta = field.circle.theta;
  BondFilter in_region{&dom, &region};
  KahanSum total = reduce_bonds(dom.bonds(), [&](const Bond& b, KahanSum& acc) {
    if (!in_region(b)) return;
    int sep = field.circle.state_separation(field.states[b.a], field.states[b.b]);
    acc.add(eps * (sep * theta));
  });
  return total.value();
}

double bv_lower_bound(const SpinField& field, const std::optional<Shape>& region) {
  const auto& dom = *field.domain;
  const double eps = dom.epsilon();
  const double theta = field.circle.theta;
  const double factor = 2.0 * std::sin(0.5 * theta) / theta;
  BondFilter in_region{&dom, &region};
  KahanSum total = reduce_bonds(dom.bonds(), [&](const Bond& b, KahanSum& acc) {
    if (!in_region(b)) return;
    int sep = field.circle.state_separation(field.states[b.a], field.states[b.b]);
    double chord = 2.0 * std::sin(0.5 * sep * theta);
    acc.add(eps * chord);
  });
  return factor * total.value();
}

}  // namespace clockxy
