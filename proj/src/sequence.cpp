#include "inv/sequence.hpp"

namespace inv {

char to_char(Base b) {
  constexpr char kChars[] = {'A', 'C', 'G', 'U'};
  return kChars[static_cast<int>(b)];
}

Base base_from_char(char c) {
  switch (c) {
    case 'A': return Base::A;
    case 'C': return Base::C;
    case 'G': return Base::G;
    case 'U': return Base::U;
    default:
      throw Error(ErrorKind::IllegalNucleotide, std::string("illegal nucleotide '") + c + "'");
  }
}

RnaSequence RnaSequence::parse(std::string_view text) {
  std::vector<Base> bases;
  bases.reserve(text.size());
  for (std::size_t w = 0; w < text.size(); ++w) {
    try {
      bases.push_back(base_from_char(text[w]));
    } catch (const Error& e) {
      const int pos = static_cast<int>(w) + 1;
      throw Error(ErrorKind::IllegalNucleotide,
                  std::string(e.what()) + " at position " + std::to_string(pos), pos);
    }
  }
  return RnaSequence(std::move(bases));
}

RnaSequence RnaSequence::slice(const Interval& range) const {
  return RnaSequence(std::vector<Base>(bases_.begin() + (range.l - 1), bases_.begin() + range.r));
}

void RnaSequence::assign(const Interval& range, const RnaSequence& part) {
  std::copy(part.bases_.begin(), part.bases_.end(), bases_.begin() + (range.l - 1));
}

std::string RnaSequence::str() const {
  std::string out;
  out.reserve(bases_.size());
  for (Base b : bases_) out.push_back(to_char(b));
  return out;
}

namespace {

void require_length(const RnaSequence& s, const Structure& st) {
  if (s.size() != st.size()) {
    throw Error(ErrorKind::LengthMismatch, "sequence of length " + std::to_string(s.size()) +
                                               " against structure of length " +
                                               std::to_string(st.size()));
  }
}

void require_compatible(const RnaSequence& s, const Structure& st) {
  if (!is_compatible(s, st)) {
    throw Error(ErrorKind::IncompatibleInput, "sequence " + s.str() + " is not compatible");
  }
}

}  // namespace

std::size_t uniform_index(Rng& rng, std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

bool is_compatible(const RnaSequence& s, const Structure& structure) {
  require_length(s, structure);
  for (const Arc& a : structure.arcs()) {
    if (!can_pair(s[a.i], s[a.j])) return false;
  }
  return true;
}

SeqDecomposition decompose_sequence(const RnaSequence& s, const Structure& structure) {
  require_length(s, structure);
  SeqDecomposition d;
  for (int w = 1; w <= s.size(); ++w) {
    const int p = structure.partner(w);
    if (p == 0) d.unpaired.push_back(s[w]);
    else if (p > w) d.paired.emplace_back(s[w], s[p]);
  }
  return d;
}

RnaSequence reassemble(const SeqDecomposition& d, const Structure& structure) {
  std::vector<Base> bases(static_cast<std::size_t>(structure.size()), Base::A);
  std::size_t u = 0;
  std::size_t p = 0;
  for (int w = 1; w <= structure.size(); ++w) {
    const int q = structure.partner(w);
    if (q == 0) {
      bases[w - 1] = d.unpaired.at(u++);
    } else if (q > w) {
      bases[w - 1] = d.paired.at(p).first;
      bases[q - 1] = d.paired.at(p).second;
      ++p;
    }
  }
  return RnaSequence(std::move(bases));
}

RnaSequence make_start(const Structure& target, Rng& rng) {
  std::vector<Base> bases(static_cast<std::size_t>(target.size()), Base::A);
  for (int w = 1; w <= target.size(); ++w) {
    const int q = target.partner(w);
    if (q == 0) {
      bases[w - 1] = kBases[uniform_index(rng, kBases.size())];
    } else if (q > w) {
      const auto& pair = kPairs[uniform_index(rng, kPairs.size())];
      bases[w - 1] = pair.first;
      bases[q - 1] = pair.second;
    }
  }
  return RnaSequence(std::move(bases));
}

std::vector<RnaSequence> compatible_neighbors(const RnaSequence& s, const Structure& structure) {
  require_compatible(s, structure);
  std::vector<RnaSequence> out;
  for (int w = 1; w <= s.size(); ++w) {
    const int q = structure.partner(w);
    if (q == 0) {
      for (Base b : kBases) {
        if (b == s[w]) continue;
        RnaSequence t = s;
        t[w] = b;
        out.push_back(std::move(t));
      }
    } else if (q > w) {
      for (const auto& [x, y] : kPairs) {
        if (x == s[w] && y == s[q]) continue;
        RnaSequence t = s;
        t[w] = x;
        t[q] = y;
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

int compatible_distance(const RnaSequence& a, const RnaSequence& b, const Structure& structure) {
  require_length(b, structure);
  require_compatible(a, structure);
  require_compatible(b, structure);
  int d = 0;
  for (int w = 1; w <= a.size(); ++w) {
    const int q = structure.partner(w);
    if (q == 0) d += a[w] != b[w];
    else if (q > w) d += (a[w] != b[w] || a[q] != b[q]);
  }
  return d;
}

}  // namespace inv
