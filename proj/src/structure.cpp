#include "inv/structure.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace inv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnbalancedBracket: return "UnbalancedBracket";
    case ErrorKind::IllegalCharacter: return "IllegalCharacter";
    case ErrorKind::InvalidStructure: return "InvalidStructure";
    case ErrorKind::TooManyFamilies: return "TooManyFamilies";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ArcNotInStructure: return "ArcNotInStructure";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::IncompatibleInput: return "IncompatibleInput";
    case ErrorKind::IllegalNucleotide: return "IllegalNucleotide";
    case ErrorKind::SizeGuard: return "SizeGuard";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Structure::Structure(int n) : n_(n), partner_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0) throw Error(ErrorKind::InvalidStructure, "negative structure length");
}

Structure::Structure(int n, std::vector<Arc> arcs) : Structure(n) {
  std::sort(arcs.begin(), arcs.end());
  for (const Arc& a : arcs) {
    if (a.i < 1 || a.j > n || a.i >= a.j) {
      std::ostringstream msg;
      msg << "arc (" << a.i << "," << a.j << ") is not an arc over [1," << n << "]";
      throw Error(ErrorKind::InvalidStructure, msg.str(), a.i);
    }
    for (int w : {a.i, a.j}) {
      if (partner_[w] != 0) {
        std::ostringstream msg;
        msg << "position " << w << " is paired more than once";
        throw Error(ErrorKind::InvalidStructure, msg.str(), w);
      }
    }
    partner_[a.i] = a.j;
    partner_[a.j] = a.i;
  }
  arcs_ = std::move(arcs);
}

int Structure::partner(int w) const {
  if (w < 1 || w > n_) {
    throw Error(ErrorKind::OutOfRange, "position " + std::to_string(w) + " outside [1," +
                                           std::to_string(n_) + "]", w);
  }
  return partner_[w];
}

bool Structure::contains(const Arc& a) const {
  return a.i >= 1 && a.j <= n_ && a.i < a.j && partner_[a.i] == a.j;
}

Structure Structure::restricted_to(const Interval& range) const {
  std::vector<Arc> kept;
  const int shift = range.l - 1;
  for (const Arc& a : arcs_) {
    if (range.contains(a.i) && range.contains(a.j)) kept.push_back({a.i - shift, a.j - shift});
  }
  return Structure(range.size(), std::move(kept));
}

void ValidationPolicy::check() const {
  if (k < 2 || sigma < 1 || min_arc_length < 1) {
    throw Error(ErrorKind::InvalidConfig,
                "validation policy needs k >= 2, sigma >= 1, min_arc_length >= 1");
  }
}

namespace {

constexpr std::array<char, 3> kOpeners{'(', '[', '{'};
constexpr std::array<char, 3> kClosers{')', ']', '}'};

// Largest crossing together with one witness arc. Arcs are sorted by i, so a
// k-crossing starting at f is f plus a chain of arcs g with f.i < g.i < f.j < g.j
// whose right ends increase.
std::pair<int, Arc> max_crossing(const Structure& s) {
  const auto& arcs = s.arcs();
  if (arcs.empty()) return {0, Arc{}};
  int best = 1;
  Arc witness = arcs.front();
  std::vector<int> tails;
  for (std::size_t f = 0; f < arcs.size(); ++f) {
    tails.clear();
    for (std::size_t g = f + 1; g < arcs.size() && arcs[g].i < arcs[f].j; ++g) {
      if (arcs[g].j <= arcs[f].j) continue;
      auto it = std::lower_bound(tails.begin(), tails.end(), arcs[g].j);
      if (it == tails.end()) tails.push_back(arcs[g].j);
      else *it = arcs[g].j;
    }
    const int k = 1 + static_cast<int>(tails.size());
    if (k > best) {
      best = k;
      witness = arcs[f];
    }
  }
  return {best, witness};
}

}  // namespace

Structure parse_structure(std::string_view text) {
  const int n = static_cast<int>(text.size());
  std::array<std::vector<int>, 3> open;
  std::vector<Arc> arcs;
  for (int w = 1; w <= n; ++w) {
    const char c = text[w - 1];
    if (c == ':' || c == '.') continue;
    auto op = std::find(kOpeners.begin(), kOpeners.end(), c);
    if (op != kOpeners.end()) {
      open[op - kOpeners.begin()].push_back(w);
      continue;
    }
    auto cl = std::find(kClosers.begin(), kClosers.end(), c);
    if (cl == kClosers.end()) {
      throw Error(ErrorKind::IllegalCharacter,
                  std::string("illegal character '") + c + "' at position " + std::to_string(w), w);
    }
    auto& family = open[cl - kClosers.begin()];
    if (family.empty()) {
      throw Error(ErrorKind::UnbalancedBracket,
                  std::string("unmatched '") + c + "' at position " + std::to_string(w), w);
    }
    arcs.push_back({family.back(), w});
    family.pop_back();
  }
  int first_unmatched = 0;
  for (const auto& family : open) {
    if (!family.empty() && (first_unmatched == 0 || family.front() < first_unmatched)) {
      first_unmatched = family.front();
    }
  }
  if (first_unmatched != 0) {
    throw Error(ErrorKind::UnbalancedBracket,
                std::string("unmatched '") + text[first_unmatched - 1] + "' at position " +
                    std::to_string(first_unmatched),
                first_unmatched);
  }
  return Structure(n, std::move(arcs));
}

std::string serialize_structure(const Structure& s, char unpaired) {
  std::string out(static_cast<std::size_t>(s.size()), unpaired);
  std::array<std::vector<Arc>, 3> families;
  for (const Arc& a : s.arcs()) {
    std::size_t f = 0;
    for (; f < families.size(); ++f) {
      const auto& fam = families[f];
      if (std::none_of(fam.begin(), fam.end(), [&](const Arc& b) { return crosses(a, b); })) break;
    }
    if (f == families.size()) {
      throw Error(ErrorKind::TooManyFamilies,
                  "arc (" + std::to_string(a.i) + "," + std::to_string(a.j) +
                      ") needs a fourth bracket family",
                  a.i);
    }
    families[f].push_back(a);
    out[a.i - 1] = kOpeners[f];
    out[a.j - 1] = kClosers[f];
  }
  return out;
}

int crossing_number(const Structure& s) { return max_crossing(s).first; }

std::vector<Stack> stacks(const Structure& s) {
  std::vector<Stack> result;
  const auto& p = s.partners();
  for (const Arc& a : s.arcs()) {
    const bool continues_outer = a.i > 1 && a.j < s.size() && p[a.i - 1] == a.j + 1;
    if (continues_outer) continue;
    Stack st;
    Arc cur = a;
    st.arcs.push_back(cur);
    while (cur.j - cur.i > 2 && p[cur.i + 1] == cur.j - 1) {
      cur = {cur.i + 1, cur.j - 1};
      st.arcs.push_back(cur);
    }
    result.push_back(std::move(st));
  }
  return result;
}

std::vector<Violation> validate_target(const Structure& s, const ValidationPolicy& policy) {
  policy.check();
  std::vector<Violation> out;
  auto [cross, witness] = max_crossing(s);
  if (cross > policy.k - 1) {
    std::ostringstream msg;
    msg << cross << " mutually crossing arcs starting at (" << witness.i << "," << witness.j
        << "); at most " << policy.k - 1 << " allowed";
    out.push_back({ViolationKind::TooManyCrossings, witness, cross, msg.str()});
  }
  for (const Stack& st : stacks(s)) {
    if (st.size() < policy.sigma) {
      std::ostringstream msg;
      msg << "stack at (" << st.outer().i << "," << st.outer().j << ") has size " << st.size()
          << " < " << policy.sigma;
      out.push_back({ViolationKind::StackTooSmall, st.outer(), st.size(), msg.str()});
    }
  }
  for (const Arc& a : s.arcs()) {
    if (a.length() < policy.min_arc_length) {
      std::ostringstream msg;
      msg << "arc (" << a.i << "," << a.j << ") has length " << a.length() << " < "
          << policy.min_arc_length;
      out.push_back({ViolationKind::ArcTooShort, a, a.length(), msg.str()});
    }
    if (a.j == a.i + 1) {
      std::ostringstream msg;
      msg << "arc (" << a.i << "," << a.j << ") pairs adjacent positions";
      out.push_back({ViolationKind::AdjacentPair, a, 1, msg.str()});
    }
  }
  return out;
}

int structure_distance(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::LengthMismatch, "structures of length " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()));
  }
  const auto& pa = a.partners();
  const auto& pb = b.partners();
  int d = 0;
  for (int w = 1; w <= a.size(); ++w) d += pa[w] != pb[w];
  return d;
}

Structure core_of(const Structure& s) {
  std::vector<char> drop(static_cast<std::size_t>(s.size()) + 1, 0);
  for (const Stack& st : stacks(s)) {
    for (std::size_t h = 1; h < st.arcs.size(); ++h) {
      drop[st.arcs[h].i] = 1;
      drop[st.arcs[h].j] = 1;
    }
  }
  std::vector<int> renumber(static_cast<std::size_t>(s.size()) + 1, 0);
  int kept = 0;
  for (int w = 1; w <= s.size(); ++w) {
    if (!drop[w]) renumber[w] = ++kept;
  }
  std::vector<Arc> arcs;
  for (const Arc& a : s.arcs()) {
    if (!drop[a.i]) arcs.push_back({renumber[a.i], renumber[a.j]});
  }
  return Structure(kept, std::move(arcs));
}

bool LGraph::connected() const {
  if (vertices == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(vertices), 0);
  std::vector<int> todo{0};
  seen[0] = 1;
  int reached = 1;
  while (!todo.empty()) {
    int u = todo.back();
    todo.pop_back();
    for (int v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        todo.push_back(v);
      }
    }
  }
  return reached == vertices;
}

LGraph l_graph_of(const Structure& s) {
  LGraph g;
  const auto& arcs = s.arcs();
  g.vertices = static_cast<int>(arcs.size());
  g.adjacency.resize(arcs.size());
  for (int u = 0; u < g.vertices; ++u) {
    for (int v = u + 1; v < g.vertices; ++v) {
      if (crosses(arcs[u], arcs[v])) {
        g.edges.emplace_back(u, v);
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
      }
    }
  }
  return g;
}

bool is_skeleton(const Structure& s) {
  if (s.empty()) return false;
  const Structure core = core_of(s);
  const auto& arcs = core.arcs();
  for (const Arc& a : arcs) {
    if (std::none_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return crosses(a, b); })) {
      return false;
    }
  }
  return l_graph_of(s).connected();
}

bool is_motif(const Structure& s, int sigma) {
  const auto& arcs = s.arcs();
  for (const Stack& st : stacks(s)) {
    const bool maximal = std::none_of(arcs.begin(), arcs.end(),
                                      [&](const Arc& b) { return nested_in(st.outer(), b); });
    if (maximal && st.size() != sigma) return false;
  }
  return true;
}

}  // namespace inv
