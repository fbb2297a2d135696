#include "mms/partition.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace mms {

namespace {

// Dinic max-flow on small integral networks.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  int add_edge(int from, int to, std::int64_t cap) {
    adj_[static_cast<std::size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap});
    adj_[static_cast<std::size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  std::int64_t flow_on(int edge) const { return edges_[static_cast<std::size_t>(edge ^ 1)].cap; }

  std::int64_t max_flow(int source, int sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      iter_.assign(adj_.size(), 0);
      while (std::int64_t pushed = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    std::int64_t cap;
  };

  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e : adj_[static_cast<std::size_t>(u)]) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.cap > 0 && level_[static_cast<std::size_t>(edge.to)] < 0) {
          level_[static_cast<std::size_t>(edge.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(edge.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  std::int64_t dfs(int u, int sink, std::int64_t limit) {
    if (u == sink) return limit;
    auto& it = iter_[static_cast<std::size_t>(u)];
    for (; it < adj_[static_cast<std::size_t>(u)].size(); ++it) {
      const int e = adj_[static_cast<std::size_t>(u)][it];
      auto& edge = edges_[static_cast<std::size_t>(e)];
      if (edge.cap <= 0 || level_[static_cast<std::size_t>(edge.to)] != level_[static_cast<std::size_t>(u)] + 1) continue;
      if (std::int64_t got = dfs(edge.to, sink, std::min(limit, edge.cap)); got > 0) {
        edge.cap -= got;
        edges_[static_cast<std::size_t>(e ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

std::vector<int> seeded_labels(int n, std::uint64_t seed) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 1);
  if (seed != 0) {
    Rng rng(seed);
    shuffle(labels, rng);
  }
  return labels;
}

KSubset relabel(std::vector<int> block, const std::vector<int>& labels) {
  for (int& x : block) x = labels[static_cast<std::size_t>(x - 1)];
  std::sort(block.begin(), block.end());
  return KSubset(std::move(block));
}

void sort_blocks(ParallelClass& pc) { std::sort(pc.blocks.begin(), pc.blocks.end()); }

BaranyaiPartition circle_method(int n, std::uint64_t seed) {
  const auto labels = seeded_labels(n, seed);
  const int m = n - 1;
  BaranyaiPartition p{n, 2, seed, {}};
  for (int r = 0; r < m; ++r) {
    ParallelClass pc;
    pc.blocks.push_back(relabel({r + 1, n}, labels));
    for (int i = 1; i < n / 2; ++i) {
      const int a = (r + i) % m;
      const int b = (r - i + m) % m;
      pc.blocks.push_back(relabel({std::min(a, b) + 1, std::max(a, b) + 1}, labels));
    }
    sort_blocks(pc);
    p.classes.push_back(std::move(pc));
  }
  return p;
}

// Each class starts as n/k empty partial blocks. Adding element e: a flow
// picks, for every class, one non-full partial block S to extend, subject to
// S being extended exactly C(n-e-1, k-|S|-1) times overall. The fractional
// assignment (k-|S|)/(n-e) per copy is feasible, so an integral one exists.
BaranyaiPartition flow_method(int n, int k, std::uint64_t seed) {
  using Mask = std::uint64_t;
  const int per_class = n / k;
  const auto classes_count = binomial(n - 1, k - 1).get_si();
  std::vector<std::vector<Mask>> partial(static_cast<std::size_t>(classes_count),
                                         std::vector<Mask>(static_cast<std::size_t>(per_class), 0));
  Rng rng(seed);

  for (int e = 0; e < n; ++e) {
    std::map<Mask, int> set_ids;
    std::vector<Mask> set_masks;
    for (const auto& cls : partial) {
      for (Mask s : cls) {
        if (std::popcount(s) < k && !set_ids.contains(s)) {
          set_ids.emplace(s, static_cast<int>(set_masks.size()));
          set_masks.push_back(s);
        }
      }
    }
    const int source = 0;
    const int first_set = 1 + static_cast<int>(classes_count);
    const int sink = first_set + static_cast<int>(set_masks.size());
    FlowNetwork net(sink + 1);

    std::vector<int> class_order(static_cast<std::size_t>(classes_count));
    std::iota(class_order.begin(), class_order.end(), 0);
    if (seed != 0) shuffle(class_order, rng);

    // (class, set) -> edge
    std::vector<std::vector<std::pair<Mask, int>>> class_edges(static_cast<std::size_t>(classes_count));
    for (int c : class_order) {
      net.add_edge(source, 1 + c, 1);
      std::map<Mask, int> mult;
      for (Mask s : partial[static_cast<std::size_t>(c)]) {
        if (std::popcount(s) < k) ++mult[s];
      }
      std::vector<std::pair<Mask, int>> entries(mult.begin(), mult.end());
      if (seed != 0) shuffle(entries, rng);
      for (auto [s, count] : entries) {
        const int edge = net.add_edge(1 + c, first_set + set_ids.at(s), count);
        class_edges[static_cast<std::size_t>(c)].emplace_back(s, edge);
      }
    }
    for (std::size_t i = 0; i < set_masks.size(); ++i) {
      const int size = std::popcount(set_masks[i]);
      const auto demand = binomial(n - e - 1, k - size - 1).get_si();
      net.add_edge(first_set + static_cast<int>(i), sink, demand);
    }
    if (net.max_flow(source, sink) != classes_count) {
      throw std::logic_error("Baranyai flow step failed to saturate; this contradicts the rounding lemma");
    }
    for (int c = 0; c < classes_count; ++c) {
      for (auto [s, edge] : class_edges[static_cast<std::size_t>(c)]) {
        if (net.flow_on(edge) == 0) continue;
        auto& cls = partial[static_cast<std::size_t>(c)];
        *std::find(cls.begin(), cls.end(), s) |= Mask{1} << e;
        break;
      }
    }
  }

  const auto labels = seeded_labels(n, seed);
  BaranyaiPartition p{n, k, seed, {}};
  p.classes.reserve(static_cast<std::size_t>(classes_count));
  for (const auto& cls : partial) {
    ParallelClass pc;
    for (Mask s : cls) {
      std::vector<int> block;
      for (int e = 0; e < n; ++e) {
        if (s >> e & 1) block.push_back(e + 1);
      }
      pc.blocks.push_back(relabel(std::move(block), labels));
    }
    sort_blocks(pc);
    p.classes.push_back(std::move(pc));
  }
  return p;
}

}  // namespace

bool partition_within_limit(int n, int k) { return binomial(n, k) <= big(kPartitionSizeLimit); }

BaranyaiPartition baranyai_partition(int n, int k, std::uint64_t seed) {
  if (k < 1 || n < k) throw std::invalid_argument("baranyai_partition needs 1 <= k <= n");
  if (n % k != 0) throw std::invalid_argument("baranyai_partition needs k | n");
  if (!partition_within_limit(n, k)) {
    throw BudgetExceeded("C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds the partition size limit");
  }
  if (k == 1 || k == n) {
    BaranyaiPartition p{n, k, seed, {}};
    ParallelClass pc;
    for (int i = 1; i <= n; i += k) pc.blocks.emplace_back(first_combination(k, i));
    p.classes.push_back(std::move(pc));
    return p;
  }
  if (k == 2) return circle_method(n, seed);
  return flow_method(n, k, seed);
}

std::shared_ptr<const BaranyaiPartition> cached_partition(int n, int k, std::uint64_t seed) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, std::uint64_t>, std::shared_ptr<const BaranyaiPartition>> cache;
  const auto key = std::make_tuple(n, k, seed);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const BaranyaiPartition>(baranyai_partition(n, k, seed));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(built)).first->second;
}

PartitionCheck validate_partition(const BaranyaiPartition& p) {
  auto fail = [](std::string why) { return PartitionCheck{false, std::move(why)}; };
  if (p.k < 1 || p.n < p.k) return fail("invalid (n, k)");
  if (p.n % p.k != 0) return fail("k does not divide n");
  const BigInt expected = binomial(p.n - 1, p.k - 1);
  if (BigInt(static_cast<unsigned long>(p.classes.size())) != expected) {
    return fail("expected " + expected.get_str() + " classes, found " + std::to_string(p.classes.size()));
  }
  std::set<KSubset> seen;
  for (std::size_t c = 0; c < p.classes.size(); ++c) {
    const auto& blocks = p.classes[c].blocks;
    const std::string where = "class " + std::to_string(c);
    if (static_cast<int>(blocks.size()) != p.n / p.k) {
      return fail(where + " has " + std::to_string(blocks.size()) + " blocks");
    }
    std::vector<bool> covered(static_cast<std::size_t>(p.n) + 1, false);
    for (const auto& b : blocks) {
      if (b.k() != p.k) return fail(where + " has a block of size " + std::to_string(b.k()));
      for (int i : b.indices()) {
        if (i < 1 || i > p.n) return fail(where + " has an index outside [1, n]");
        if (covered[static_cast<std::size_t>(i)]) return fail(where + " blocks overlap at " + std::to_string(i));
        covered[static_cast<std::size_t>(i)] = true;
      }
      if (!seen.insert(b).second) return fail(where + " repeats a block already used");
    }
  }
  // n/k blocks of size k, pairwise disjoint, in range: each class covers [n].
  if (BigInt(static_cast<unsigned long>(seen.size())) != binomial(p.n, p.k)) return fail("blocks do not cover [n]^(k)");
  return {};
}

const KSubset& max_sum_block(const Configuration& config, const ParallelClass& parallel_class) {
  const KSubset* best = nullptr;
  Rational best_sum;
  for (const auto& b : parallel_class.blocks) {
    Rational s = ksum(config, b);
    if (best == nullptr || s > best_sum || (s == best_sum && b < *best)) {
      best = &b;
      best_sum = std::move(s);
    }
  }
  if (best == nullptr) throw std::invalid_argument("empty parallel class");
  return *best;
}

SubsetFamily partition_lower_bound_witnesses(const Configuration& config, int k, std::uint64_t seed) {
  const int n = config.size();
  if (k < 1 || k > n || n % k != 0) throw std::invalid_argument("partition witnesses need k | n");
  if (sgn(config.total_sum()) < 0) throw std::invalid_argument("partition witnesses need a non-negative total sum");
  const auto partition = cached_partition(n, k, seed);
  SubsetFamily family(n, k);
  for (const auto& pc : partition->classes) {
    const auto& block = max_sum_block(config, pc);
    // The blocks of a class sum to the total, so the largest is non-negative.
    if (sgn(ksum(config, block)) < 0) throw std::logic_error("parallel class without a non-negative block");
    family.insert(block);
  }
  return family;
}

ParallelClass random_parallel_class(int lo, int n, int k, Rng& rng) {
  if (k < 1 || n % k != 0) throw std::invalid_argument("random_parallel_class needs k | n");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), lo);
  shuffle(perm, rng);
  ParallelClass pc;
  for (int i = 0; i < n; i += k) {
    std::vector<int> block(perm.begin() + i, perm.begin() + i + k);
    std::sort(block.begin(), block.end());
    pc.blocks.emplace_back(std::move(block));
  }
  sort_blocks(pc);
  return pc;
}

}  // namespace mms
