#include "qdefect/levels.hpp"

namespace qdefect {

std::string_view to_string(LevelKind k) {
  switch (k) {
    case LevelKind::positive: return "positive";
    case LevelKind::zero: return "zero";
    case LevelKind::bound: return "bound";
  }
  return "positive";
}

std::string_view to_string(ChannelTag c) {
  switch (c) {
    case ChannelTag::plus: return "plus";
    case ChannelTag::minus: return "minus";
    case ChannelTag::none: return "none";
  }
  return "none";
}

EigenLevel EigenLevel::from_energy(double E, ChannelTag channel, int index) {
  EigenLevel lv;
  lv.E = E;
  lv.channel = channel;
  lv.index = index;
  if (E > 0.0) {
    lv.kind = LevelKind::positive;
    lv.k_or_kappa = std::sqrt(E);
  } else if (E < 0.0) {
    lv.kind = LevelKind::bound;
    lv.k_or_kappa = std::sqrt(-E);
  } else {
    lv.kind = LevelKind::zero;
    lv.k_or_kappa = 0.0;
  }
  return lv;
}

}  // namespace qdefect
