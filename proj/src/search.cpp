#include "gdl/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdl {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kPollMask = 4095;  // budget/abort checks every 4096 nodes

struct VertexMeta {
  int circuit = 0;
  int pos = 0;
  int first_vertex = 0;
  int len = 0;
};

// One DFS engine for both drivers. Symmetry reductions: the first vertex of
// each circuit carries that circuit's minimum label (fixes rotation), and
// equal-length circuits are ordered by their first labels (fixes exchange).
// When every circuit from some index onward has the same length, the next
// first label is forced to be the smallest unused one.
class DfsKernel {
 public:
  DfsKernel(const CircuitFamily& fam, const MagnitudeProfile* prof,
            bool symmetry)
      : fam_(fam),
        n_(fam.total_vertices()),
        prof_(prof),
        symmetry_(symmetry),
        labels_(n_, 0),
        label_used_(n_ + 1, 0),
        dl_used_(2 * n_ + 1, 0) {
    meta_.resize(n_);
    for (int c = 0; c < fam.circuit_count(); ++c) {
      const int off = fam.circuit_offset(c);
      const int k = fam.circuit_length(c);
      for (int i = 0; i < k; ++i) meta_[off + i] = {c, i, off, k};
    }
    prev_same_.assign(fam.circuit_count(), -1);
    for (int c = 0; c < fam.circuit_count(); ++c)
      for (int b = c - 1; b >= 0; --b)
        if (fam.circuit_length(b) == fam.circuit_length(c)) {
          prev_same_[c] = b;
          break;
        }
    forced_min_.assign(fam.circuit_count(), true);
    for (int c = fam.circuit_count() - 2; c >= 0; --c)
      forced_min_[c] = forced_min_[c + 1] &&
                       fam.circuit_length(c) == fam.circuit_length(c + 1);
  }

  std::uint64_t max_nodes = 0;
  double max_seconds = 0.0;
  Clock::time_point start_time{};
  std::atomic<std::uint64_t>* shared_nodes = nullptr;
  std::function<bool()> external_abort;

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }
  const std::vector<int>& found() const { return found_; }

  // Replays an already-validated prefix of placements; used by the parallel
  // driver to seed a task from a frontier entry. Limit-magnitude arcs in the
  // prefix count against the profile cap like any other.
  void place_prefix(const std::vector<int>& prefix) {
    for (std::size_t v = 0; v < prefix.size(); ++v) {
      const int label = prefix[v];
      labels_[v] = label;
      label_used_[label] = 1;
      const VertexMeta& m = meta_[v];
      if (m.pos > 0) mark_dl(labels_[v - 1], label);
      if (m.pos == m.len - 1) mark_dl(label, labels_[m.first_vertex]);
    }
    depth_ = static_cast<int>(prefix.size());
  }

  // 0 = subtree exhausted, 1 = solution found, 2 = aborted.
  int run() { return descend(depth_); }

  // Exhaustively enumerates feasible prefixes of length `limit` into `out`,
  // in lexicographic order (never aborts; used only at shallow depths).
  void collect_prefixes(int limit, std::vector<std::vector<int>>& out) {
    collect_limit_ = limit;
    collect_out_ = &out;
    descend_collect(depth_);
    collect_out_ = nullptr;
  }

  void flush_nodes() {
    if (shared_nodes) {
      *shared_nodes += nodes_ - flushed_;
      flushed_ = nodes_;
    }
  }

 private:
  void mark_dl(int from, int to) {
    dl_used_[to - from + n_] = 1;
    if (prof_ && std::abs(to - from) == prof_->max_magnitude) ++at_limit_;
  }

  bool poll() {
    flush_nodes();
    const std::uint64_t total = shared_nodes ? shared_nodes->load() : nodes_;
    if (max_nodes && total > max_nodes) return true;
    if (max_seconds > 0.0 &&
        std::chrono::duration<double>(Clock::now() - start_time).count() >
            max_seconds)
      return true;
    if (external_abort && external_abort()) return true;
    return false;
  }

  bool count_node() {
    ++nodes_;
    if (max_nodes && !shared_nodes && nodes_ > max_nodes) {
      aborted_ = true;  // exact in the serial driver
      return true;
    }
    if ((nodes_ & kPollMask) == 0 && poll()) aborted_ = true;
    return aborted_;
  }

  int lowest_unused() const {
    for (int l = 1; l <= n_; ++l)
      if (!label_used_[l]) return l;
    return 0;
  }

  int descend(int v) {
    if (v == n_) {
      found_ = labels_;
      return 1;
    }
    const VertexMeta& m = meta_[v];
    if (m.pos == 0) {
      int lo = 1;
      int hi = n_;
      if (symmetry_) {
        if (forced_min_[m.circuit]) lo = hi = lowest_unused();
        else if (prev_same_[m.circuit] >= 0)
          lo = labels_[fam_.circuit_offset(prev_same_[m.circuit])] + 1;
      }
      for (int l = lo; l <= hi; ++l) {
        if (label_used_[l]) continue;
        label_used_[l] = 1;
        labels_[v] = l;
        const int r = count_node() ? 2 : descend(v + 1);
        label_used_[l] = 0;
        if (r) return r;
      }
      return 0;
    }
    const int prev = labels_[v - 1];
    const bool closing = m.pos == m.len - 1;
    const int first_label = labels_[m.first_vertex];
    const int lo = symmetry_ ? first_label + 1 : 1;
    for (int l = lo; l <= n_; ++l) {
      if (label_used_[l]) continue;
      const int d1 = l - prev;
      if (dl_used_[d1 + n_]) continue;
      int limit_add = 0;
      if (prof_) {
        const int mag = std::abs(d1);
        if (mag > prof_->max_magnitude) continue;
        limit_add += mag == prof_->max_magnitude;
      }
      int d2 = 0;
      if (closing) {
        d2 = first_label - l;
        if (d2 == d1 || dl_used_[d2 + n_]) continue;
        if (prof_) {
          const int mag = std::abs(d2);
          if (mag > prof_->max_magnitude) continue;
          limit_add += mag == prof_->max_magnitude;
        }
      }
      if (prof_ && at_limit_ + limit_add > prof_->max_count_at_limit) continue;
      label_used_[l] = 1;
      labels_[v] = l;
      dl_used_[d1 + n_] = 1;
      if (closing) dl_used_[d2 + n_] = 1;
      at_limit_ += limit_add;
      const int r = count_node() ? 2 : descend(v + 1);
      at_limit_ -= limit_add;
      if (closing) dl_used_[d2 + n_] = 0;
      dl_used_[d1 + n_] = 0;
      label_used_[l] = 0;
      if (r) return r;
    }
    return 0;
  }

  // Same candidate logic as descend, but stops at collect_limit_ and never
  // aborts. Kept separate so the hot path stays branch-light.
  int descend_collect(int v) {
    if (v == collect_limit_) {
      collect_out_->emplace_back(labels_.begin(), labels_.begin() + v);
      return 0;
    }
    const VertexMeta& m = meta_[v];
    if (m.pos == 0) {
      int lo = 1;
      int hi = n_;
      if (symmetry_) {
        if (forced_min_[m.circuit]) lo = hi = lowest_unused();
        else if (prev_same_[m.circuit] >= 0)
          lo = labels_[fam_.circuit_offset(prev_same_[m.circuit])] + 1;
      }
      for (int l = lo; l <= hi; ++l) {
        if (label_used_[l]) continue;
        label_used_[l] = 1;
        labels_[v] = l;
        ++nodes_;
        descend_collect(v + 1);
        label_used_[l] = 0;
      }
      return 0;
    }
    const int prev = labels_[v - 1];
    const bool closing = m.pos == m.len - 1;
    const int first_label = labels_[m.first_vertex];
    const int lo = symmetry_ ? first_label + 1 : 1;
    for (int l = lo; l <= n_; ++l) {
      if (label_used_[l]) continue;
      const int d1 = l - prev;
      if (dl_used_[d1 + n_]) continue;
      int limit_add = 0;
      if (prof_) {
        const int mag = std::abs(d1);
        if (mag > prof_->max_magnitude) continue;
        limit_add += mag == prof_->max_magnitude;
      }
      int d2 = 0;
      if (closing) {
        d2 = first_label - l;
        if (d2 == d1 || dl_used_[d2 + n_]) continue;
        if (prof_) {
          const int mag = std::abs(d2);
          if (mag > prof_->max_magnitude) continue;
          limit_add += mag == prof_->max_magnitude;
        }
      }
      if (prof_ && at_limit_ + limit_add > prof_->max_count_at_limit) continue;
      label_used_[l] = 1;
      labels_[v] = l;
      dl_used_[d1 + n_] = 1;
      if (closing) dl_used_[d2 + n_] = 1;
      at_limit_ += limit_add;
      ++nodes_;
      descend_collect(v + 1);
      at_limit_ -= limit_add;
      if (closing) dl_used_[d2 + n_] = 0;
      dl_used_[d1 + n_] = 0;
      label_used_[l] = 0;
    }
    return 0;
  }

  const CircuitFamily& fam_;
  int n_;
  const MagnitudeProfile* prof_;
  bool symmetry_;
  std::vector<int> labels_;
  std::vector<char> label_used_;
  std::vector<char> dl_used_;
  std::vector<VertexMeta> meta_;
  std::vector<int> prev_same_;
  std::vector<char> forced_min_;
  int at_limit_ = 0;
  int depth_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  bool aborted_ = false;
  std::vector<int> found_;
  int collect_limit_ = 0;
  std::vector<std::vector<int>>* collect_out_ = nullptr;
};

double symmetry_factor(const CircuitFamily& fam) {
  double f = 1.0;
  std::map<int, int> group;
  for (int c = 0; c < fam.circuit_count(); ++c) {
    f *= fam.circuit_length(c);
    f *= ++group[fam.circuit_length(c)];  // running factorial per length
  }
  return f;
}

Certificate make_result(const CircuitFamily& fam, int outcome,
                        std::vector<int> labels, SearchStats stats,
                        const SearchBudget& budget) {
  Certificate cert;
  cert.search = stats;
  if (outcome == 1) {
    cert.status = CertStatus::Gdl;
    cert.labeling = Labeling{fam, std::move(labels)};
  } else if (outcome == 0) {
    cert.status = CertStatus::NoGdlExhaustive;
  } else {
    cert.status = CertStatus::Timeout;
    cert.reason = "search budget exhausted";
    cert.budget_nodes = budget.max_nodes;
    cert.budget_seconds = budget.max_seconds;
  }
  return cert;
}

Certificate search_serial(const CircuitFamily& fam, const SearchBudget& budget,
                          const MagnitudeProfile* prof,
                          const SearchOptions& opt) {
  DfsKernel kernel(fam, prof, opt.use_symmetry);
  kernel.max_nodes = budget.max_nodes;
  kernel.max_seconds = budget.max_seconds;
  kernel.start_time = Clock::now();
  const int outcome = kernel.run();
  SearchStats stats;
  stats.nodes = kernel.nodes();
  stats.seconds =
      std::chrono::duration<double>(Clock::now() - kernel.start_time).count();
  stats.symmetry = opt.use_symmetry;
  stats.symmetry_factor = opt.use_symmetry ? symmetry_factor(fam) : 1.0;
  stats.threads = 1;
  return make_result(fam, outcome, kernel.found(), stats, budget);
}

Certificate search_parallel(const CircuitFamily& fam,
                            const SearchBudget& budget,
                            const MagnitudeProfile* prof,
                            const SearchOptions& opt) {
  const int n = fam.total_vertices();
  int threads = opt.threads;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif
  const auto start = Clock::now();

  // Grow a frontier of feasible prefixes until there is enough work to split.
  const std::size_t target = static_cast<std::size_t>(threads) * 8;
  std::vector<std::vector<int>> frontier{{}};
  int depth = 0;
  std::uint64_t expansion_nodes = 0;
  while (depth < n && frontier.size() < target) {
    std::vector<std::vector<int>> next;
    ++depth;
    for (const auto& prefix : frontier) {
      DfsKernel kernel(fam, prof, opt.use_symmetry);
      kernel.place_prefix(prefix);
      std::vector<std::vector<int>> extended;
      kernel.collect_prefixes(depth, extended);
      expansion_nodes += kernel.nodes();
      for (auto& e : extended) next.push_back(std::move(e));
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  SearchStats stats;
  stats.symmetry = opt.use_symmetry;
  stats.symmetry_factor = opt.use_symmetry ? symmetry_factor(fam) : 1.0;
  stats.threads = threads;

  if (frontier.empty() || depth == n) {
    // Space exhausted during expansion, or prefixes are full solutions.
    stats.nodes = expansion_nodes;
    stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!frontier.empty())
      return make_result(fam, 1, frontier.front(), stats, budget);
    return make_result(fam, 0, {}, stats, budget);
  }

  std::atomic<std::uint64_t> shared_nodes{expansion_nodes};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::atomic<int> best_index{INT_MAX};
  const int tasks = static_cast<int>(frontier.size());
  std::vector<std::vector<int>> results(tasks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (int i = 0; i < tasks; ++i) {
    if (stop.load() || i > best_index.load()) continue;
    DfsKernel kernel(fam, prof, opt.use_symmetry);
    kernel.place_prefix(frontier[i]);
    kernel.max_nodes = budget.max_nodes;
    kernel.max_seconds = budget.max_seconds;
    kernel.start_time = start;
    kernel.shared_nodes = &shared_nodes;
    if (budget.canonical)
      kernel.external_abort = [&best_index, i] { return i > best_index.load(); };
    else
      kernel.external_abort = [&stop] { return stop.load(); };
    const int outcome = kernel.run();
    kernel.flush_nodes();
    if (outcome == 1) {
      results[i] = kernel.found();
      int cur = best_index.load();
      while (i < cur && !best_index.compare_exchange_weak(cur, i)) {
      }
      if (!budget.canonical) stop.store(true);
    } else if (outcome == 2 && !(budget.canonical && i > best_index.load()) &&
               !stop.load()) {
      timed_out.store(true);
      if (!budget.canonical) stop.store(true);
    }
  }

  stats.nodes = shared_nodes.load();
  stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const int winner = best_index.load();
  if (winner != INT_MAX) return make_result(fam, 1, results[winner], stats, budget);
  if (timed_out.load()) return make_result(fam, 2, {}, stats, budget);
  return make_result(fam, 0, {}, stats, budget);
}

}  // namespace

Certificate search_gdl(const CircuitFamily& family, const SearchBudget& budget,
                       const std::optional<MagnitudeProfile>& profile,
                       const SearchOptions& options) {
  const int n = family.total_vertices();
  if (n > 12 && budget.max_nodes == 0 && budget.max_seconds == 0.0 &&
      !options.allow_unbounded)
    throw std::invalid_argument(
        "unbounded search beyond 12 vertices requires an explicit budget or "
        "override");
  if (n == 0) {
    Certificate cert;
    cert.status = CertStatus::Gdl;
    cert.labeling = Labeling{family, {}};
    cert.search = SearchStats{};
    return cert;
  }
  const MagnitudeProfile* prof = profile ? &*profile : nullptr;
  if (options.parallel) return search_parallel(family, budget, prof, options);
  return search_serial(family, budget, prof, options);
}

Certificate certify_nonexistence(const CircuitFamily& family,
                                 bool override_guard) {
  if (family.total_vertices() > 12 && !override_guard)
    throw std::invalid_argument(
        "exhaustive certification guarded to <= 12 vertices; pass the "
        "override to force");
  SearchBudget unlimited;
  SearchOptions opt;
  opt.allow_unbounded = true;
  return search_gdl(family, unlimited, {}, opt);
}

}  // namespace gdl
