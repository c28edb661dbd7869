#include "sl2grow/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

namespace sl2grow {

namespace {

constexpr std::size_t kMaxOrder = 128;
constexpr double kTieTolerance = 1e-12;

struct Bits128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  void set(unsigned i) noexcept {
    if (i < 64) {
      lo |= std::uint64_t{1} << i;
    } else {
      hi |= std::uint64_t{1} << (i - 64);
    }
  }
  bool test(unsigned i) const noexcept { return i < 64 ? (lo >> i) & 1U : (hi >> (i - 64)) & 1U; }
  unsigned count() const noexcept {
    return static_cast<unsigned>(std::popcount(lo) + std::popcount(hi));
  }
  Bits128& operator|=(const Bits128& o) noexcept {
    lo |= o.lo;
    hi |= o.hi;
    return *this;
  }
  friend Bits128 operator|(Bits128 a, const Bits128& b) noexcept { return a |= b; }
  friend bool operator==(const Bits128&, const Bits128&) = default;
  friend bool operator<(const Bits128& a, const Bits128& b) noexcept {
    return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
  }

  template <typename F>
  void for_each(F&& f) const {
    std::uint64_t w = lo;
    while (w != 0) {
      f(static_cast<unsigned>(std::countr_zero(w)));
      w &= w - 1;
    }
    w = hi;
    while (w != 0) {
      f(static_cast<unsigned>(std::countr_zero(w)) + 64U);
      w &= w - 1;
    }
  }
};

using Rows = std::array<Bits128, kMaxOrder>;

// Precomputed data for one small group.
struct SearchSpace {
  TablePtr table;
  unsigned n = 0;
  Bits128 full;
  std::vector<std::array<std::uint8_t, kMaxOrder>> mult;
  std::vector<std::pair<ElementIndex, ElementIndex>> pairs;
  std::vector<Bits128> pair_mask;
  // conj_pair[k][q]: pair index of the k-th conjugator applied to pair q
  std::vector<std::vector<std::uint8_t>> conj_pair;
  std::array<double, kMaxOrder + 1> log_table{};
  unsigned identity = 0;
  unsigned minus_identity = 0;

  explicit SearchSpace(std::uint32_t p) {
    TableOptions opts;
    opts.mult_table_max_order = kMaxOrder;
    opts.max_order = kMaxOrder;
    table = GroupTable::create(p, opts);
    const GroupTable& t = *table;
    n = static_cast<unsigned>(t.order());
    for (unsigned i = 0; i < n; ++i) full.set(i);
    mult.resize(n);
    for (unsigned a = 0; a < n; ++a) {
      for (unsigned b = 0; b < n; ++b) mult[a][b] = static_cast<std::uint8_t>(t.mul(a, b));
    }
    pairs = inverse_pairs(t);
    std::vector<std::uint8_t> pair_of(n, 0xff);
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      Bits128 m;
      m.set(pairs[q].first);
      m.set(pairs[q].second);
      pair_mask.push_back(m);
      pair_of[pairs[q].first] = pair_of[pairs[q].second] = static_cast<std::uint8_t>(q);
    }
    // One conjugator per {g, -g}: both act identically.
    for (unsigned g = 0; g < n; ++g) {
      if (t.negate(g) < g) continue;
      const unsigned ginv = t.inverse(g);
      std::vector<std::uint8_t> row(pairs.size());
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        row[q] = pair_of[t.mul(t.mul(ginv, pairs[q].first), g)];
      }
      conj_pair.push_back(std::move(row));
    }
    for (std::size_t k = 1; k <= kMaxOrder; ++k) log_table[k] = std::log(static_cast<double>(k));
    identity = t.identity();
    minus_identity = t.minus_identity();
  }

  Rows rows_of(const Bits128& s) const {
    Rows rows{};
    for (unsigned a = 0; a < n; ++a) {
      s.for_each([&](unsigned b) { rows[a].set(mult[a][b]); });
    }
    return rows;
  }

  // <S> for S containing I, as the union of the powers of S.
  bool generates(const Rows& rows, const Bits128& s) const {
    Bits128 reach = s;
    for (;;) {
      Bits128 next = reach;
      reach.for_each([&](unsigned a) { next |= rows[a]; });
      if (next == reach) return reach == full;
      reach = next;
    }
  }

  ElementSet to_set(const Bits128& b) const {
    ElementSet s(table);
    b.for_each([&](unsigned i) { s.insert(i); });
    return s;
  }
};

struct LocalResult {
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_size = 0;
  std::size_t best_cube = 0;
  std::vector<Bits128> witnesses;
  std::uint64_t nodes = 0;
  std::uint64_t cut = 0;
};

struct Task {
  bool with_center = false;
  std::vector<unsigned> chosen;
};

class Walker {
 public:
  Walker(const SearchSpace& space, const SearchConfig& cfg) : sp_(space), cfg_(cfg) {
    const std::size_t depth_cap = space.pairs.size() + 2;
    rows_.resize(depth_cap);
    states_.resize(depth_cap);
  }

  // Walk from the root of one half; with a frontier sink, states at the
  // frontier depth are handed off instead of expanded.
  void run_root(bool with_center, std::vector<Task>* frontier) {
    Bits128 s;
    s.set(sp_.identity);
    if (with_center) s.set(sp_.minus_identity);
    start(with_center, {}, s, frontier);
  }

  void run_task(const Task& task) {
    Bits128 s;
    s.set(sp_.identity);
    if (task.with_center) s.set(sp_.minus_identity);
    for (const auto q : task.chosen) s |= sp_.pair_mask[q];
    start(task.with_center, task.chosen, s, nullptr);
  }

  LocalResult& result() noexcept { return res_; }

 private:
  struct State {
    Bits128 s, s2, s3;
  };

  void start(bool with_center, std::vector<unsigned> chosen, const Bits128& s, std::vector<Task>* frontier) {
    with_center_ = with_center;
    chosen_ = std::move(chosen);
    frontier_ = frontier;
    rows_[0] = sp_.rows_of(s);
    State st{s, {}, {}};
    s.for_each([&](unsigned a) { st.s2 |= rows_[0][a]; });
    st.s2.for_each([&](unsigned a) { st.s3 |= rows_[0][a]; });
    states_[0] = st;
    visit(0);
  }

  bool canonical() const {
    const std::size_t d = chosen_.size();
    std::array<unsigned, 16> image{};
    for (const auto& row : sp_.conj_pair) {
      for (std::size_t i = 0; i < d; ++i) image[i] = row[chosen_[i]];
      std::sort(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(d));
      if (std::lexicographical_compare(image.begin(), image.begin() + static_cast<std::ptrdiff_t>(d),
                                       chosen_.begin(), chosen_.end())) {
        return false;
      }
    }
    return true;
  }

  void evaluate(const State& st, const Rows& rows) {
    const unsigned size = st.s.count();
    if (size < 2) return;
    const unsigned cube = st.s3.count();
    const double delta = sp_.log_table[cube] / sp_.log_table[size];
    if (delta > res_.best + kTieTolerance) return;
    if (!sp_.generates(rows, st.s)) return;
    if (delta < res_.best - kTieTolerance) {
      res_.best = delta;
      res_.best_size = size;
      res_.best_cube = cube;
      res_.witnesses.clear();
    }
    res_.witnesses.push_back(st.s);
  }

  void visit(std::size_t level) {
    const unsigned depth = static_cast<unsigned>(chosen_.size());
    if (frontier_ != nullptr && depth == cfg_.frontier_depth && level > 0) {
      frontier_->push_back(Task{with_center_, chosen_});
      return;
    }
    const State& st = states_[level];
    const Rows& rows = rows_[level];
    ++res_.nodes;
    if (cfg_.visitor) cfg_.visitor(chosen_, with_center_);
    evaluate(st, rows);
    if (cfg_.max_depth && depth >= *cfg_.max_depth) return;

    const unsigned first = chosen_.empty() ? 0 : chosen_.back() + 1;
    const auto npairs = static_cast<unsigned>(sp_.pairs.size());
    if (std::isfinite(cfg_.delta_cap)) {
      const unsigned size = st.s.count();
      const unsigned most = std::min(size + 2 * (npairs - first), sp_.n / 2);
      if (most >= 2 && sp_.log_table[st.s3.count()] / sp_.log_table[most] > cfg_.delta_cap) return;
    }

    for (unsigned q = first; q < npairs; ++q) {
      chosen_.push_back(q);
      if (depth + 1 <= cfg_.conjugacy_prune_depth && !canonical()) {
        chosen_.pop_back();
        continue;
      }
      const auto [x, xinv] = sp_.pairs[q];
      Rows& next_rows = rows_[level + 1];
      next_rows = rows;
      for (unsigned a = 0; a < sp_.n; ++a) {
        next_rows[a].set(sp_.mult[a][x]);
        next_rows[a].set(sp_.mult[a][xinv]);
      }
      State& next = states_[level + 1];
      next.s = st.s | sp_.pair_mask[q];
      next.s2 = Bits128{};
      next.s.for_each([&](unsigned a) { next.s2 |= next_rows[a]; });
      next.s3 = st.s3;
      bool full = false;
      next.s2.for_each([&](unsigned a) {
        if (!full) {
          next.s3 |= next_rows[a];
          full = next.s3 == sp_.full;
        }
      });
      if (full) {
        ++res_.cut;
      } else {
        visit(level + 1);
      }
      chosen_.pop_back();
    }
  }

  const SearchSpace& sp_;
  const SearchConfig& cfg_;
  LocalResult res_;
  bool with_center_ = false;
  std::vector<unsigned> chosen_;
  std::vector<Task>* frontier_ = nullptr;
  std::vector<Rows> rows_;
  std::vector<State> states_;
};

void merge_into(LocalResult& total, LocalResult&& part) {
  total.nodes += part.nodes;
  total.cut += part.cut;
  if (part.witnesses.empty()) return;
  if (part.best < total.best - kTieTolerance) {
    total.best = part.best;
    total.best_size = part.best_size;
    total.best_cube = part.best_cube;
    total.witnesses = std::move(part.witnesses);
  } else if (part.best <= total.best + kTieTolerance) {
    total.witnesses.insert(total.witnesses.end(), part.witnesses.begin(), part.witnesses.end());
  }
}

std::uint32_t det_mod(const std::array<std::uint32_t, 4>& m, std::uint32_t p) {
  const std::uint64_t ad = std::uint64_t{m[0]} * m[3] % p;
  const std::uint64_t bc = std::uint64_t{m[1]} * m[2] % p;
  return static_cast<std::uint32_t>((ad + p - bc) % p);
}

std::array<std::uint32_t, 4> mat_mul(const std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 4>& y,
                                     std::uint32_t p) {
  const auto f = [p](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return static_cast<std::uint32_t>((a * b + c * d) % p);
  };
  return {f(x[0], y[0], x[1], y[2]), f(x[0], y[1], x[1], y[3]), f(x[2], y[0], x[3], y[2]),
          f(x[2], y[1], x[3], y[3])};
}

}  // namespace

std::string_view to_string(SearchHalf half) noexcept {
  switch (half) {
    case SearchHalf::WithCenter: return "with-center";
    case SearchHalf::WithoutCenter: return "without-center";
    case SearchHalf::Both: return "both";
  }
  return "both";
}

SearchHalf parse_search_half(std::string_view text) {
  for (const auto h : {SearchHalf::WithCenter, SearchHalf::WithoutCenter, SearchHalf::Both}) {
    if (to_string(h) == text) return h;
  }
  throw Error(ErrorCode::ParseError, "unknown search half '" + std::string(text) + "'");
}

std::vector<std::pair<ElementIndex, ElementIndex>> inverse_pairs(const GroupTable& table) {
  std::vector<std::pair<ElementIndex, ElementIndex>> out;
  for (ElementIndex i = 0; i < table.order(); ++i) {
    const ElementIndex j = table.inverse(i);
    if (i < j) out.emplace_back(i, j);
  }
  return out;
}

SearchResult backtrack_search(const SearchConfig& config) {
  const std::uint64_t order = std::uint64_t{config.p + 1} * config.p * (config.p - 1);
  if (order > kMaxOrder) {
    throw Error(ErrorCode::BudgetExceeded, "exhaustive search supports |SL(2,p)| <= 128, p=" +
                                               std::to_string(config.p) + " has " + std::to_string(order));
  }
  if (config.conjugacy_prune_depth > 15) throw Error(ErrorCode::DomainError, "prune depth above 15");
  if (!(config.delta_cap > 1)) throw Error(ErrorCode::DomainError, "delta_cap must exceed 1");
  if (config.worker_count == 0) throw Error(ErrorCode::DomainError, "worker_count must be positive");

  const auto started = std::chrono::steady_clock::now();
  const SearchSpace space(config.p);

  std::vector<bool> halves;
  if (config.half != SearchHalf::WithoutCenter) halves.push_back(true);
  if (config.half != SearchHalf::WithCenter) halves.push_back(false);

  const bool split = config.worker_count > 1 && !config.visitor;
  LocalResult total;
  for (const bool with_center : halves) {
    std::vector<Task> tasks;
    Walker root(space, config);
    root.run_root(with_center, split ? &tasks : nullptr);
    merge_into(total, std::move(root.result()));

    std::vector<LocalResult> parts(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        Walker w(space, config);
        w.run_task(tasks[i]);
        parts[i] = std::move(w.result());
      }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned k = 0; k < config.worker_count; ++k) pool.emplace_back(work);
    }
    for (auto& part : parts) merge_into(total, std::move(part));
  }

  std::sort(total.witnesses.begin(), total.witnesses.end(), [](const Bits128& a, const Bits128& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
  });
  total.witnesses.erase(std::unique(total.witnesses.begin(), total.witnesses.end()), total.witnesses.end());

  SearchResult out;
  out.best_delta = total.best;
  out.best_size = total.best_size;
  out.best_cube = total.best_cube;
  out.nodes_visited = total.nodes;
  out.nodes_cut = total.cut;
  for (const auto& w : total.witnesses) out.witnesses.push_back(space.to_set(w));
  out.wall_time = std::chrono::steady_clock::now() - started;
  return out;
}

ElementSet published_optimum(const TablePtr& table) {
  const Fp& f = table->field();
  if (f.modulus() != 5) throw Error(ErrorCode::DomainError, "the published optimum lives in SL(2,5)");
  const auto m = [&](int a, int b, int c, int d) { return GroupElement::make(f, a, b, c, d); };
  const GroupElement plain[] = {m(2, 0, 0, 3), m(3, 0, 1, 2), m(0, 3, 3, 2),
                                m(4, 3, 2, 3), m(3, 3, 3, 0), m(2, 3, 2, 1)};
  const GroupElement cyclic[] = {m(1, 1, 4, 0), m(1, 4, 1, 0), m(1, 1, 1, 2)};
  ElementSet s(table);
  for (const auto& g : plain) {
    s.insert(g);
    s.insert(g.inverse());
  }
  for (const auto& g : cyclic) {
    const auto ord = g.order();
    for (std::uint64_t k = 0; k < ord; ++k) s.insert(g.pow(k));
  }
  if (s.size() != 30) {
    throw Error(ErrorCode::InterpretationMismatch,
                "reading <M> as a cyclic group gives " + std::to_string(s.size()) + " elements, not 30");
  }
  return s;
}

GrowthReport verify_published_optimum() {
  const auto table = GroupTable::create(5);
  return analyze(published_optimum(table));
}

ElementSet gl_conjugate(const ElementSet& s, const std::array<std::uint32_t, 4>& x) {
  const GroupTable& t = s.table();
  const std::uint32_t p = t.prime();
  const std::uint32_t det = det_mod(x, p);
  if (det == 0) throw Error(ErrorCode::DomainError, "singular conjugator");
  const std::uint32_t dinv = t.field()(det).inv().value();
  const auto sc = [&](std::uint32_t v) { return static_cast<std::uint32_t>(std::uint64_t{v} * dinv % p); };
  const auto neg = [&](std::uint32_t v) { return v == 0 ? 0 : p - v; };
  const std::array<std::uint32_t, 4> xinv{sc(x[3]), sc(neg(x[1])), sc(neg(x[2])), sc(x[0])};
  ElementSet out(s.table_ptr());
  s.for_each([&](ElementIndex i) {
    const auto r = mat_mul(mat_mul(xinv, t.element(i).entries(), p), x, p);
    out.insert(GroupElement::make(t.field(), r[0], r[1], r[2], r[3]));
  });
  return out;
}

std::size_t gl_conjugacy_classes(std::span<const ElementSet> sets) {
  if (sets.empty()) return 0;
  const GroupTable& t = sets.front().table();
  const std::uint32_t p = t.prime();
  std::vector<std::array<std::uint32_t, 4>> conjugators;
  for (std::uint32_t scale = 1; scale < p; ++scale) {
    const std::array<std::uint32_t, 4> d{scale, 0, 0, 1};
    for (const auto& g : t.elements()) conjugators.push_back(mat_mul(d, g.entries(), p));
  }
  std::set<std::vector<std::uint64_t>> classes;
  for (const auto& s : sets) {
    if (&s.table() != &t) throw Error(ErrorCode::TableMismatch, "witnesses over different tables");
    std::vector<std::uint64_t> best = s.words();
    for (const auto& x : conjugators) best = std::min(best, gl_conjugate(s, x).words());
    classes.insert(std::move(best));
  }
  return classes.size();
}

}  // namespace sl2grow
