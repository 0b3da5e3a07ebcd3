#include "wlpa/growth.hpp"

#include <algorithm>
#include <map>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wlpa {

std::vector<Letter> letter_alphabet(const WeightedGraph& g) {
  std::vector<Letter> a;
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 1; t <= g.edges[e].weight; ++t) a.push_back(Letter::real_letter((int)e, t));
  for (size_t e = 0; e < g.edges.size(); ++e)
    for (int t = 1; t <= g.edges[e].weight; ++t) a.push_back(Letter::ghost_letter((int)e, t));
  return a;
}

std::vector<Word> QuasicycleSet::class_representatives() const {
  std::vector<Word> reps(num_classes);
  for (const Quasicycle& q : all)
    if (reps[q.class_id].letters.empty()) reps[q.class_id] = q.word;
  return reps;
}

namespace {

// Depth-first enumeration of quasicycles starting with a fixed first letter.
//
// A quasicycle is a closed d-path with pairwise distinct letters such that
// every cyclic 2-letter window is composable and non-forbidden, and no proper
// cyclic window is itself closed with a non-forbidden wrap. The search keeps
// the invariant that the current path has no such proper window among its
// non-wrapping factors; wrap-spanning windows are checked when a candidate
// closes.
struct QuasicycleSearch {
  const RewriteContext& ctx;
  const std::vector<Letter>& alphabet;
  std::vector<Word> found;
  std::vector<Letter> path;

  void run(const Letter& start) {
    path.clear();
    path.push_back(start);
    dfs();
  }

  bool closed_wrapok(size_t i, const Letter& last) const {
    // window path[i..] followed by wrap (last, path[i])
    return letter_source(path[i], ctx.graph) == letter_range(last, ctx.graph) &&
           !ctx.forbidden(last, path[i]);
  }

  void dfs() {
    const Letter last = path.back();
    if (closed_wrapok(0, last)) {
      if (no_wrapping_proper_window()) found.push_back(Word{path});
      return;  // any extension would contain this window
    }
    for (const Letter& y : alphabet) {
      if (!ctx.transition(last, y)) continue;
      if (std::find(path.begin(), path.end(), y) != path.end()) continue;
      bool pruned = false;
      for (size_t i = 1; i < path.size() && !pruned; ++i)
        if (closed_wrapok(i, y)) pruned = true;
      if (letter_source(y, ctx.graph) == letter_range(y, ctx.graph) && !ctx.forbidden(y, y)) pruned = true;
      if (pruned) continue;
      path.push_back(y);
      dfs();
      path.pop_back();
    }
  }

  bool no_wrapping_proper_window() const {
    size_t n = path.size();
    for (size_t s = 1; s < n; ++s)
      for (size_t len = n - s + 1; len < n; ++len) {
        const Letter& first = path[s];
        const Letter& last = path[(s + len - 1) % n];
        if (letter_source(first, ctx.graph) == letter_range(last, ctx.graph) && !ctx.forbidden(last, first))
          return false;
      }
    return true;
  }
};

Word min_rotation(const Word& w) {
  Word best = w;
  Word cur = w;
  for (size_t i = 1; i < w.letters.size(); ++i) {
    std::rotate(cur.letters.begin(), cur.letters.begin() + 1, cur.letters.end());
    if (cur.letters < best.letters) best = cur;
  }
  return best;
}

QuasicycleSet enumerate_impl(const RewriteContext& ctx, bool parallel) {
  std::vector<Letter> alphabet = letter_alphabet(ctx.graph);
  std::vector<std::vector<Word>> per_start(alphabet.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (size_t i = 0; i < alphabet.size(); ++i) {
    QuasicycleSearch search{ctx, alphabet, {}, {}};
    search.run(alphabet[i]);
    per_start[i] = std::move(search.found);
  }
  (void)parallel;

  std::map<Word, std::vector<Word>, WordLess> classes;  // canonical rotation -> members
  for (const auto& bucket : per_start)
    for (const Word& w : bucket) classes[min_rotation(w)].push_back(w);

  QuasicycleSet out;
  WordLess less;
  for (auto& [rep, members] : classes) {
    std::sort(members.begin(), members.end(), [&](const Word& a, const Word& b) { return less(a, b); });
    for (const Word& w : members) out.all.push_back({w, out.num_classes});
    ++out.num_classes;
  }
  return out;
}

}  // namespace

QuasicycleSet enumerate_quasicycles(const RewriteContext& ctx) { return enumerate_impl(ctx, true); }
QuasicycleSet enumerate_quasicycles_serial(const RewriteContext& ctx) { return enumerate_impl(ctx, false); }

bool implies_nod(const Word& p, const Word& q, const RewriteContext& ctx) {
  if (p.letters.empty() || q.letters.empty()) return false;
  const std::vector<Letter> alphabet = letter_alphabet(ctx.graph);
  const Letter plast = p.letters.back();
  const Letter qfirst = q.letters.front();
  const int n = (int)p.letters.size();

  // state: (letter index, match) where match = j in 0..n-1 means the word so
  // far equals p[0..j-1]; match = n means deviated. A full match of p is dead
  // (p would be a prefix of o).
  auto letter_id = [&](const Letter& l) {
    return (int)(std::lower_bound(alphabet.begin(), alphabet.end(), l,
                                  [](const Letter& a, const Letter& b) { return a < b; }) -
                 alphabet.begin());
  };
  const int kDeviated = n;
  std::vector<char> seen(alphabet.size() * (size_t)(n + 1), 0);
  std::queue<std::pair<int, int>> bfs;

  auto try_push = [&](const Letter& l, int match) {
    size_t key = (size_t)letter_id(l) * (n + 1) + match;
    if (seen[key]) return false;
    seen[key] = 1;
    if (ctx.transition(l, qfirst)) return true;  // o can stop here
    bfs.emplace(letter_id(l), match);
    return false;
  };

  for (const Letter& y : alphabet) {
    if (!ctx.transition(plast, y)) continue;
    int match;
    if (y == p.letters[0]) {
      if (n == 1) continue;  // o == p so far; stopping or continuing keeps p a prefix
      match = 1;
    } else {
      match = kDeviated;
    }
    if (try_push(y, match)) return true;
  }
  while (!bfs.empty()) {
    auto [li, match] = bfs.front();
    bfs.pop();
    const Letter cur = alphabet[li];
    for (const Letter& z : alphabet) {
      if (!ctx.transition(cur, z)) continue;
      int next;
      if (match != kDeviated && z == p.letters[match]) {
        if (match + 1 == n) continue;  // completed p: dead
        next = match + 1;
      } else {
        next = kDeviated;
      }
      if (try_push(z, next)) return true;
    }
  }
  return false;
}

bool implies(const Word& p, const Word& q, const RewriteContext& ctx) {
  if (p.letters.empty() || q.letters.empty()) return false;
  if (ctx.transition(p.letters.back(), q.letters.front())) return true;
  return implies_nod(p, q, ctx);
}

bool is_selfconnected(const Word& q, const RewriteContext& ctx) { return implies_nod(q, q, ctx); }

namespace {

struct ChainSearch {
  const RewriteContext& ctx;
  const std::vector<Quasicycle>& qs;
  std::vector<signed char> memo;  // -1 unknown, 0 no, 1 yes
  std::vector<char> used_class;
  int num_classes;
  int best = 0;

  bool arrow(size_t i, size_t j) {
    signed char& m = memo[i * qs.size() + j];
    if (m < 0) m = implies(qs[i].word, qs[j].word, ctx) ? 1 : 0;
    return m == 1;
  }

  void dfs(size_t i, int depth) {
    best = std::max(best, depth);
    for (size_t j = 0; j < qs.size(); ++j) {
      if (used_class[qs[j].class_id]) continue;
      if (!arrow(i, j)) continue;
      used_class[qs[j].class_id] = 1;
      dfs(j, depth + 1);
      used_class[qs[j].class_id] = 0;
    }
  }
};

}  // namespace

namespace {

// Index of the first selfconnected quasicycle, or -1. The flags are computed
// in parallel; the scan keeps the answer deterministic.
long long first_selfconnected(const QuasicycleSet& qs, const RewriteContext& ctx) {
  std::vector<char> flag(qs.all.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (size_t i = 0; i < qs.all.size(); ++i) flag[i] = is_selfconnected(qs.all[i].word, ctx) ? 1 : 0;
  for (size_t i = 0; i < qs.all.size(); ++i)
    if (flag[i]) return (long long)i;
  return -1;
}

int chain_best(const QuasicycleSet& qs, const RewriteContext& ctx) {
  if (qs.all.empty()) return 0;
  ChainSearch search{ctx, qs.all, std::vector<signed char>(qs.all.size() * qs.all.size(), -1),
                     std::vector<char>((size_t)qs.num_classes, 0), qs.num_classes, 0};
  for (size_t i = 0; i < qs.all.size(); ++i) {
    search.used_class.assign((size_t)qs.num_classes, 0);
    search.used_class[qs.all[i].class_id] = 1;
    search.dfs(i, 1);
  }
  return search.best;
}

}  // namespace

int max_chain_length(const RewriteContext& ctx) {
  QuasicycleSet qs = enumerate_quasicycles(ctx);
  long long sc = first_selfconnected(qs, ctx);
  if (sc >= 0)
    throw PreconditionError("max_chain_length: selfconnected quasicycle " +
                            word_str(qs.all[(size_t)sc].word, ctx.graph));
  return chain_best(qs, ctx);
}

GkDimension gk_dimension(const RewriteContext& ctx) {
  QuasicycleSet qs = enumerate_quasicycles(ctx);
  GkDimension gk;
  long long sc = first_selfconnected(qs, ctx);
  if (sc >= 0) {
    gk.infinite = true;
    gk.selfconnected_witness = qs.all[(size_t)sc].word;
    return gk;
  }
  gk.value = chain_best(qs, ctx);
  return gk;
}

BigInt count_nod_paths(const RewriteContext& ctx, int n) {
  if (n < 0) throw PreconditionError("count_nod_paths: negative length bound");
  const std::vector<Letter> alphabet = letter_alphabet(ctx.graph);
  BigInt total = (long long)ctx.graph.vertices.size();
  std::vector<BigInt> cur(alphabet.size(), 1);  // walks of current length ending in each letter
  for (int len = 1; len <= n; ++len) {
    if (len > 1) {
      std::vector<BigInt> next(alphabet.size(), 0);
      for (size_t a = 0; a < alphabet.size(); ++a) {
        if (cur[a] == 0) continue;
        for (size_t b = 0; b < alphabet.size(); ++b)
          if (ctx.transition(alphabet[a], alphabet[b])) next[b] += cur[a];
      }
      cur = std::move(next);
    }
    BigInt level = 0;
    for (const BigInt& c : cur) level += c;
    if (level == 0) break;
    total += level;
  }
  return total;
}

BigInt count_nod_paths_saturated(const RewriteContext& ctx, int cap) {
  BigInt prev = count_nod_paths(ctx, 0);
  for (int n = 1; n <= cap; ++n) {
    BigInt cur = count_nod_paths(ctx, n);
    if (cur == prev) return cur;
    prev = cur;
  }
  throw PreconditionError("count_nod_paths_saturated: no saturation within cap (graph not aquasicyclic?)");
}

}  // namespace wlpa
