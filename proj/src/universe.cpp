#include "cdwb/universe.hpp"

#include "cdwb/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace cdwb {

const Member* Universe::find(Code c) const {
  auto it = index_.find(c);
  return it == index_.end() ? nullptr : &members_[it->second];
}

std::optional<Code> Universe::lookup(const FormulaPtr& f) const {
  if (auto it = by_key_.find(to_string(f)); it != by_key_.end()) return it->second;
  return std::nullopt;
}

std::set<Code> Universe::codes() const {
  std::set<Code> out;
  for (const auto& m : members_) out.insert(m.code);
  return out;
}

std::vector<FormulaPtr> instances(const FormulaPtr& f, const WitnessSet& witnesses) {
  if (!is_quantifier(*f)) throw Error("instances of a non-quantified formula: " + to_string(f));
  std::vector<FormulaPtr> out;
  out.reserve(witnesses.size());
  for (Natural w : witnesses) out.push_back(substitute_numeral(f->left, f->var, w));
  return out;
}

namespace {

void check_seeds(const SentenceTable& table, const std::vector<Code>& seeds) {
  for (Code c : seeds) {
    if (!is_sentence(table.decode(c)))
      throw Error("seed is not a sentence: " + to_string(table.decode(c)));
  }
}

class Closure {
public:
  Closure(const SentenceTable& table, const Caps& caps) : table_(table), caps_(caps) {}

  bool admit(Code c) {
    if (!members_.insert(c).second) return false;
    if (members_.size() > caps_.max_sentences)
      throw CapExceeded("universe exceeds " + std::to_string(caps_.max_sentences) +
                        " sentences while adding " + to_string(table_.decode(c)));
    return true;
  }

  const std::set<Code>& members() const { return members_; }

private:
  const SentenceTable& table_;
  const Caps& caps_;
  std::set<Code> members_;
};

}  // namespace

Universe build_universe(SentenceTable& table, const std::vector<Code>& seeds, Natural witness_max,
                        const Caps& caps) {
  check_seeds(table, seeds);
  Closure skeleton(table, caps);
  std::deque<Code> work;
  for (Code c : seeds) {
    if (skeleton.admit(c)) work.push_back(c);
  }
  while (!work.empty()) {
    Code c = work.front();
    work.pop_front();
    for (const auto& sub : direct_subformulas(table.decode(c))) {
      if (!is_sentence(sub)) continue;
      Code sc = table.intern(sub);
      if (skeleton.admit(sc)) work.push_back(sc);
    }
  }
  if (witness_max >= caps.max_value) throw CapExceeded("witness bound exceeds the value cap");
  WitnessSet w(skeleton.members().begin(), skeleton.members().end());
  for (Natural i = 0; i <= witness_max; ++i) w.insert(i);
  return build_universe(table, seeds, w, caps);
}

Universe build_universe(SentenceTable& table, const std::vector<Code>& seeds,
                        const WitnessSet& witnesses, const Caps& caps) {
  check_seeds(table, seeds);
  Universe u;
  u.caps_ = caps;
  u.witnesses_ = witnesses;
  const auto limits = caps.limits();

  Closure closure(table, caps);
  std::deque<Code> work;
  for (Code c : seeds) {
    if (closure.admit(c)) work.push_back(c);
  }
  while (!work.empty()) {
    Code c = work.front();
    work.pop_front();
    const auto f = table.decode(c);
    std::vector<FormulaPtr> next;
    for (const auto& sub : direct_subformulas(f)) {
      if (is_sentence(sub)) next.push_back(sub);
    }
    if (is_quantifier(*f)) {
      auto inst = instances(f, u.witnesses_);
      next.insert(next.end(), inst.begin(), inst.end());
    }
    for (const auto& s : next) {
      Code sc = table.intern(s);
      if (closure.admit(sc)) work.push_back(sc);
    }
  }

  u.members_.reserve(closure.members().size());
  for (Code c : closure.members()) {
    Member m;
    m.code = c;
    m.formula = table.decode(c);
    const auto& f = *m.formula;
    switch (f.kind) {
      case Formula::Kind::Eq:
        m.eq_holds = value_closed(f.lhs, limits) == value_closed(f.rhs, limits);
        break;
      case Formula::Kind::Tr:
      case Formula::Kind::Det:
        m.target = value_closed(f.lhs, limits);
        break;
      case Formula::Kind::Not:
      case Formula::Kind::And:
      case Formula::Kind::Or:
        for (const auto& sub : direct_subformulas(m.formula)) m.children.push_back(*table.find(sub));
        break;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        for (const auto& inst : instances(m.formula, u.witnesses_))
          m.children.push_back(*table.find(inst));
        break;
    }
    u.index_.emplace(c, u.members_.size());
    u.by_key_.emplace(to_string(m.formula), c);
    u.members_.push_back(std::move(m));
  }
  return u;
}

}  // namespace cdwb
