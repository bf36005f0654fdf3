#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inv/structure.hpp"

namespace inv {

enum class Base : std::uint8_t { A = 0, C = 1, G = 2, U = 3 };

inline constexpr std::array<Base, 4> kBases{Base::A, Base::C, Base::G, Base::U};

/// The six ordered pairs AU, UA, GC, CG, GU, UG.
inline constexpr std::array<std::pair<Base, Base>, 6> kPairs{{
    {Base::A, Base::U},
    {Base::U, Base::A},
    {Base::G, Base::C},
    {Base::C, Base::G},
    {Base::G, Base::U},
    {Base::U, Base::G},
}};

char to_char(Base b);
Base base_from_char(char c);  // throws IllegalNucleotide

constexpr bool can_pair(Base x, Base y) noexcept {
  // A=0 C=1 G=2 U=3; bit (4x+y) set for the six allowed pairs.
  constexpr std::uint16_t table = (1u << (0 * 4 + 3)) | (1u << (3 * 4 + 0)) |
                                  (1u << (2 * 4 + 1)) | (1u << (1 * 4 + 2)) |
                                  (1u << (2 * 4 + 3)) | (1u << (3 * 4 + 2));
  return (table >> (static_cast<int>(x) * 4 + static_cast<int>(y))) & 1u;
}

/// Sequence over {A,C,G,U} with 1-based access.
class RnaSequence {
 public:
  RnaSequence() = default;
  explicit RnaSequence(std::vector<Base> bases) : bases_(std::move(bases)) {}
  /// Parses an uppercase ACGU string. Throws IllegalNucleotide with position.
  static RnaSequence parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(bases_.size()); }
  Base operator[](int w) const { return bases_[static_cast<std::size_t>(w - 1)]; }
  Base& operator[](int w) { return bases_[static_cast<std::size_t>(w - 1)]; }
  const std::vector<Base>& bases() const noexcept { return bases_; }

  RnaSequence slice(const Interval& range) const;
  void assign(const Interval& range, const RnaSequence& part);
  std::string str() const;

  friend bool operator==(const RnaSequence&, const RnaSequence&) = default;
  friend auto operator<=>(const RnaSequence&, const RnaSequence&) = default;

 private:
  std::vector<Base> bases_;
};

using Rng = std::mt19937_64;

/// Throws LengthMismatch when |s| != S.n.
bool is_compatible(const RnaSequence& s, const Structure& structure);

/// The sequence split into unpaired bases and base pairs.
struct SeqDecomposition {
  std::vector<Base> unpaired;                  // ascending position
  std::vector<std::pair<Base, Base>> paired;   // ascending start point
};

SeqDecomposition decompose_sequence(const RnaSequence& s, const Structure& structure);
RnaSequence reassemble(const SeqDecomposition& d, const Structure& structure);

/// Uniform over C[T]: four bases per unpaired position, six pairs per arc.
RnaSequence make_start(const Structure& target, Rng& rng);

/// All u-neighbours (3 per unpaired position) and p-neighbours (5 per arc).
/// Throws IncompatibleInput when s is not compatible with the structure.
std::vector<RnaSequence> compatible_neighbors(const RnaSequence& s, const Structure& structure);

/// Unpaired positions that differ plus arcs whose pairs differ.
int compatible_distance(const RnaSequence& a, const RnaSequence& b, const Structure& structure);

std::size_t uniform_index(Rng& rng, std::size_t count);

}  // namespace inv
