#include "machina/mealy.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace machina {

SymbolOutOfRange::SymbolOutOfRange(Symbol x, std::size_t alphabet)
    : TransducerError("symbol " + std::to_string(x)
                      + " is outside the alphabet of size "
                      + std::to_string(alphabet)) {}

StateBudgetExceeded::StateBudgetExceeded(std::size_t cap)
    : TransducerError("transducer product exceeds " + std::to_string(cap)
                      + " states") {}

MealyMachine::MealyMachine(std::size_t         state_count,
                           std::size_t         alphabet_size,
                           std::vector<State>  delta,
                           std::vector<Symbol> lambda)
    : states_(state_count),
      alphabet_(alphabet_size),
      delta_(std::move(delta)),
      lambda_(std::move(lambda)) {
  if (states_ == 0 || alphabet_ == 0) {
    throw TransducerError("machine needs at least one state and one symbol");
  }
  if (alphabet_ > kMaxOrder) {
    throw TransducerError("alphabet larger than " + std::to_string(kMaxOrder));
  }
  if (delta_.size() != states_ * alphabet_
      || lambda_.size() != states_ * alphabet_) {
    throw TransducerError("transition and output tables must be complete");
  }
  for (State q : delta_) {
    if (q >= states_) {
      throw TransducerError("transition to nonexistent state "
                            + std::to_string(q));
    }
  }
  for (Symbol y : lambda_) {
    if (y >= alphabet_) {
      throw SymbolOutOfRange(y, alphabet_);
    }
  }
}

PointedTransducer::PointedTransducer(MealyMachine machine, State initial)
    : machine_(std::move(machine)), initial_(initial) {
  if (initial_ >= machine_.state_count()) {
    throw TransducerError("initial state " + std::to_string(initial_)
                          + " does not exist");
  }
}

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Assigns each of the n rows (each `width` words, stored contiguously) the
// index of its first equal row's class, numbering classes by first
// appearance. Returns the number of classes.
std::size_t assign_row_ids(std::vector<std::uint32_t> const& rows,
                           std::size_t                       n,
                           std::size_t                       width,
                           std::vector<std::uint32_t>&       ids) {
  std::size_t cap = 1;
  while (cap < 2 * n) {
    cap <<= 1;
  }
  std::vector<std::uint32_t> slots(cap, kUnset);
  ids.assign(n, 0);
  std::size_t count = 0;
  for (std::size_t q = 0; q < n; ++q) {
    std::uint32_t const* row = rows.data() + q * width;
    std::uint64_t        h   = width;
    for (std::size_t i = 0; i < width; ++i) {
      h = mix(h, row[i]);
    }
    std::size_t pos = h & (cap - 1);
    while (true) {
      std::uint32_t other = slots[pos];
      if (other == kUnset) {
        slots[pos] = static_cast<std::uint32_t>(q);
        ids[q]     = static_cast<std::uint32_t>(count++);
        break;
      }
      if (std::equal(row, row + width, rows.data() + other * width)) {
        ids[q] = ids[other];
        break;
      }
      pos = (pos + 1) & (cap - 1);
    }
  }
  return count;
}

// Minimizes a machine whose states are all reachable from state 0 and
// relabels the quotient in breadth-first order from the initial block.
PointedTransducer minimize_accessible(std::size_t                n,
                                      std::size_t                a,
                                      std::vector<State> const&  delta,
                                      std::vector<Symbol> const& lambda) {
  std::vector<std::uint32_t> block;
  std::vector<std::uint32_t> rows(lambda.begin(), lambda.end());
  std::size_t blocks = assign_row_ids(rows, n, a, block);

  // Moore refinement: split blocks by successor blocks until stable.
  std::size_t const          width = a + 1;
  std::vector<std::uint32_t> next_block;
  rows.resize(n * width);
  while (blocks < n) {
    for (std::size_t q = 0; q < n; ++q) {
      std::uint32_t* row = rows.data() + q * width;
      row[0]             = block[q];
      for (std::size_t x = 0; x < a; ++x) {
        row[x + 1] = block[delta[q * a + x]];
      }
    }
    std::size_t refined = assign_row_ids(rows, n, width, next_block);
    block.swap(next_block);
    if (refined == blocks) {
      break;
    }
    blocks = refined;
  }

  // Representative of each block: its first state in BFS order.
  std::vector<std::uint32_t> rep(blocks, kUnset);
  for (std::size_t q = 0; q < n; ++q) {
    if (rep[block[q]] == kUnset) {
      rep[block[q]] = static_cast<std::uint32_t>(q);
    }
  }
  std::vector<std::uint32_t> label(blocks, kUnset);
  std::vector<std::uint32_t> order;
  order.reserve(blocks);
  label[block[0]] = 0;
  order.push_back(block[0]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t q = rep[order[i]];
    for (std::size_t x = 0; x < a; ++x) {
      std::uint32_t b = block[delta[q * a + x]];
      if (label[b] == kUnset) {
        label[b] = static_cast<std::uint32_t>(order.size());
        order.push_back(b);
      }
    }
  }
  std::vector<State>  qd(blocks * a);
  std::vector<Symbol> ql(blocks * a);
  for (std::size_t i = 0; i < blocks; ++i) {
    std::uint32_t q = rep[order[i]];
    for (std::size_t x = 0; x < a; ++x) {
      qd[i * a + x] = label[block[delta[q * a + x]]];
      ql[i * a + x] = lambda[q * a + x];
    }
  }
  return {MealyMachine(blocks, a, std::move(qd), std::move(ql)), 0};
}

std::size_t key_width(std::size_t states) {
  if (states <= 0x100) {
    return 1;
  }
  if (states <= 0x10000) {
    return 2;
  }
  return 4;
}

void put_le(std::string& out, std::uint32_t v, std::size_t bytes) {
  for (std::size_t i = 0; i < bytes; ++i) {
    out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

std::uint32_t get_le(std::string_view in, std::size_t pos, std::size_t bytes) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i]))
         << (8 * i);
  }
  return v;
}

}  // namespace

MealyMachine cayley(FiniteSemigroup const& s) {
  std::size_t const   n = s.order();
  std::vector<State>  delta(s.table().begin(), s.table().end());
  std::vector<Symbol> lambda(s.table().begin(), s.table().end());
  return MealyMachine(n, n, std::move(delta), std::move(lambda));
}

MealyMachine dual_cayley(FiniteSemigroup const& s) {
  std::size_t const   n = s.order();
  std::vector<State>  delta(s.table().begin(), s.table().end());
  std::vector<Symbol> lambda(n * n);
  for (Element q = 0; q < n; ++q) {
    for (Element x = 0; x < n; ++x) {
      lambda[q * n + x] = s(x, q);
    }
  }
  return MealyMachine(n, n, std::move(delta), std::move(lambda));
}

PointedTransducer generator(MealyMachine const& m, State q) {
  return canonicalize(PointedTransducer(m, q));
}

std::vector<PointedTransducer> generators(MealyMachine const& m) {
  std::vector<PointedTransducer> out;
  out.reserve(m.state_count());
  for (State q = 0; q < m.state_count(); ++q) {
    out.push_back(generator(m, q));
  }
  return out;
}

PointedTransducer identity_transducer(std::size_t alphabet_size) {
  std::vector<State>  delta(alphabet_size, 0);
  std::vector<Symbol> lambda(alphabet_size);
  for (Symbol x = 0; x < alphabet_size; ++x) {
    lambda[x] = x;
  }
  return canonicalize(PointedTransducer(
      MealyMachine(1, alphabet_size, std::move(delta), std::move(lambda)), 0));
}

PointedTransducer canonicalize(PointedTransducer const& u) {
  if (u.canonical()) {
    return u;
  }
  MealyMachine const& m = u.machine();
  std::size_t const   a = m.alphabet_size();

  std::vector<std::uint32_t> label(m.state_count(), kUnset);
  std::vector<State>         order{u.initial()};
  label[u.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Symbol x = 0; x < a; ++x) {
      State t = m.next(order[i], x);
      if (label[t] == kUnset) {
        label[t] = static_cast<std::uint32_t>(order.size());
        order.push_back(t);
      }
    }
  }
  std::size_t const   n = order.size();
  std::vector<State>  delta(n * a);
  std::vector<Symbol> lambda(n * a);
  for (std::size_t i = 0; i < n; ++i) {
    for (Symbol x = 0; x < a; ++x) {
      delta[i * a + x]  = label[m.next(order[i], x)];
      lambda[i * a + x] = m.output(order[i], x);
    }
  }
  auto out       = minimize_accessible(n, a, delta, lambda);
  out.canonical_ = true;
  return out;
}

PointedTransducer compose(PointedTransducer const& u,
                          PointedTransducer const& v,
                          std::size_t              max_states) {
  if (u.alphabet_size() != v.alphabet_size()) {
    throw TransducerError("cannot compose transducers over different alphabets");
  }
  MealyMachine const& mu = u.machine();
  MealyMachine const& mv = v.machine();
  std::size_t const   a  = mu.alphabet_size();
  std::size_t const   nv = mv.state_count();
  std::size_t const   pairs = mu.state_count() * nv;

  // Pair (p, q) is keyed p * nv + q; dense lookup when the grid is small.
  bool const                                   dense = pairs <= (1u << 20);
  std::vector<std::uint32_t>                   grid;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse;
  if (dense) {
    grid.assign(pairs, kUnset);
  }
  std::vector<std::uint64_t> order;
  auto lookup = [&](std::uint64_t key) -> std::uint32_t {
    if (dense) {
      std::uint32_t& slot = grid[key];
      if (slot == kUnset) {
        slot = static_cast<std::uint32_t>(order.size());
        order.push_back(key);
      }
      return slot;
    }
    auto [it, inserted]
        = sparse.try_emplace(key, static_cast<std::uint32_t>(order.size()));
    if (inserted) {
      order.push_back(key);
    }
    return it->second;
  };

  lookup(static_cast<std::uint64_t>(u.initial()) * nv + v.initial());
  std::vector<State>  delta;
  std::vector<Symbol> lambda;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order.size() > max_states) {
      throw StateBudgetExceeded(max_states);
    }
    State p = static_cast<State>(order[i] / nv);
    State q = static_cast<State>(order[i] % nv);
    for (Symbol x = 0; x < a; ++x) {
      Symbol mid = mu.output(p, x);
      State  np  = mu.next(p, x);
      State  nq  = mv.next(q, mid);
      delta.push_back(lookup(static_cast<std::uint64_t>(np) * nv + nq));
      lambda.push_back(mv.output(q, mid));
    }
  }
  if (order.size() > max_states) {
    throw StateBudgetExceeded(max_states);
  }
  auto out       = minimize_accessible(order.size(), a, delta, lambda);
  out.canonical_ = true;
  return out;
}

PointedTransducer compose_all(std::span<const PointedTransducer> factors,
                              std::size_t                        max_states) {
  if (factors.empty()) {
    throw TransducerError("cannot compose an empty product");
  }
  PointedTransducer acc = canonicalize(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = compose(acc, factors[i], max_states);
  }
  return acc;
}

bool equal(PointedTransducer const& u, PointedTransducer const& v) {
  return canonicalize(u) == canonicalize(v);
}

StepResult step(PointedTransducer const& u, Symbol x) {
  if (x >= u.alphabet_size()) {
    throw SymbolOutOfRange(x, u.alphabet_size());
  }
  MealyMachine const& m = u.machine();
  return {m.output(u.initial(), x),
          canonicalize(PointedTransducer(m, m.next(u.initial(), x)))};
}

OutputMap output_map(PointedTransducer const& u) {
  OutputMap out;
  out.map.resize(u.alphabet_size());
  for (Symbol x = 0; x < u.alphabet_size(); ++x) {
    out.map[x] = u.machine().output(u.initial(), x);
  }
  return out;
}

std::vector<Symbol> apply_prefix(PointedTransducer const& u,
                                 std::span<const Symbol>  word) {
  std::vector<Symbol> out;
  out.reserve(word.size());
  MealyMachine const& m = u.machine();
  State               q = u.initial();
  for (Symbol x : word) {
    if (x >= m.alphabet_size()) {
      throw SymbolOutOfRange(x, m.alphabet_size());
    }
    out.push_back(m.output(q, x));
    q = m.next(q, x);
  }
  return out;
}

std::string canonical_key(PointedTransducer const& u) {
  if (!u.canonical()) {
    return canonical_key(canonicalize(u));
  }
  MealyMachine const& m = u.machine();
  std::size_t const   w = key_width(m.state_count());
  std::string         out;
  out.reserve(6 + m.delta().size() * (w + 1));
  put_le(out, static_cast<std::uint32_t>(m.state_count()), 4);
  put_le(out, static_cast<std::uint32_t>(m.alphabet_size()), 2);
  for (State q : m.delta()) {
    put_le(out, q, w);
  }
  for (Symbol y : m.lambda()) {
    out.push_back(static_cast<char>(y));
  }
  return out;
}

PointedTransducer decode_key(std::string_view key) {
  if (key.size() < 6) {
    throw TransducerError("truncated transducer key");
  }
  std::size_t const n = get_le(key, 0, 4);
  std::size_t const a = get_le(key, 4, 2);
  std::size_t const w = key_width(n);
  if (key.size() != 6 + n * a * (w + 1)) {
    throw TransducerError("transducer key has the wrong length");
  }
  std::vector<State>  delta(n * a);
  std::vector<Symbol> lambda(n * a);
  std::size_t         pos = 6;
  for (auto& q : delta) {
    q = get_le(key, pos, w);
    pos += w;
  }
  for (auto& y : lambda) {
    y = static_cast<unsigned char>(key[pos++]);
  }
  return {MealyMachine(n, a, std::move(delta), std::move(lambda)), 0, true};
}

std::string to_dot(PointedTransducer const& u) {
  std::ostringstream  out;
  MealyMachine const& m = u.machine();
  out << "# initial " << u.initial() << '\n';
  for (State q = 0; q < m.state_count(); ++q) {
    for (Symbol x = 0; x < m.alphabet_size(); ++x) {
      out << q << ' ' << x << " -> " << m.next(q, x) << " / " << m.output(q, x)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace machina
