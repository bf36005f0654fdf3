#include "inv/energy.hpp"

#include <fstream>
#include <sstream>

namespace inv {

int EnergyModel::pair_score(Base x, Base y) const {
  const auto key = [](Base a, Base b) { return static_cast<int>(a) * 4 + static_cast<int>(b); };
  const int k = key(x, y);
  if (k == key(Base::G, Base::C) || k == key(Base::C, Base::G)) return pair_gc;
  if (k == key(Base::A, Base::U) || k == key(Base::U, Base::A)) return pair_au;
  if (k == key(Base::G, Base::U) || k == key(Base::U, Base::G)) return pair_gu;
  throw Error(ErrorKind::IncompatibleInput,
              std::string("bases ") + to_char(x) + to_char(y) + " cannot pair");
}

int EnergyModel::loop_penalty(const Loop& loop) const {
  switch (loop.kind) {
    case LoopKind::Hairpin: return hairpin;
    case LoopKind::Interior: return loop.is_stacking() ? stacking : interior;
    case LoopKind::Multi: return multi;
    case LoopKind::Pseudoknot: return pseudoknot;
  }
  return 0;
}

void EnergyModel::check() const {
  if (pair_gc > 0 || pair_au > 0 || pair_gu > 0) {
    throw Error(ErrorKind::InvalidConfig, "pair scores must be <= 0");
  }
  if (hairpin < 0 || interior < 0 || stacking < 0 || multi < 0 || pseudoknot < 0) {
    throw Error(ErrorKind::InvalidConfig, "loop penalties must be >= 0");
  }
}

EnergyModel EnergyModel::from_text(const std::string& text) {
  EnergyModel m;
  const std::pair<const char*, int EnergyModel::*> fields[] = {
      {"pair_gc", &EnergyModel::pair_gc}, {"pair_au", &EnergyModel::pair_au},
      {"pair_gu", &EnergyModel::pair_gu}, {"hairpin", &EnergyModel::hairpin},
      {"interior", &EnergyModel::interior}, {"stacking", &EnergyModel::stacking},
      {"multi", &EnergyModel::multi},     {"pseudoknot", &EnergyModel::pseudoknot},
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    if (key.empty() && eq == std::string::npos) continue;
    const auto bad = [&](const std::string& why) {
      return Error(ErrorKind::InvalidConfig,
                   "energy model line " + std::to_string(lineno) + ": " + why, lineno);
    };
    if (eq == std::string::npos) throw bad("expected key = value");
    std::istringstream value_in(line.substr(eq + 1));
    int value = 0;
    std::string rest;
    if (!(value_in >> value) || (value_in >> rest)) throw bad("value is not an integer");
    bool known = false;
    for (const auto& [name, member] : fields) {
      if (key == name) {
        m.*member = value;
        known = true;
      }
    }
    if (!known) throw bad("unknown key '" + key + "'");
  }
  m.check();
  return m;
}

EnergyModel EnergyModel::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot read energy model file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

int loop_penalty_sum(const Structure& s, const EnergyModel& model) {
  int total = 0;
  for (const Loop& loop : decompose_loops(s)) total += model.loop_penalty(loop);
  return total;
}

int energy_of(const RnaSequence& seq, const Structure& s, const EnergyModel& model) {
  if (!is_compatible(seq, s)) {
    throw Error(ErrorKind::IncompatibleInput, "sequence is not compatible with the structure");
  }
  int total = loop_penalty_sum(s, model);
  for (const Arc& a : s.arcs()) total += model.pair_score(seq[a.i], seq[a.j]);
  return total;
}

}  // namespace inv
