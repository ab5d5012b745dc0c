#pragma once

#include <cstdint>
#include <string>

#include "jcpd/errors.hpp"
#include "jcpd/nodes.hpp"

namespace jcpd {

// Slot hierarchy: an FSA state is divided into LongSlots, each LongSlot into
// M ShortSlots. Indices are 1-based and global, i.e. they keep counting
// across state boundaries, so index differences measure elapsed slots.
struct SlotClock {
  std::int64_t fsa_state_s = 360;
  std::int64_t long_slot_s = 9;
  std::int64_t short_slot_s = 3;

  void validate() const {
    if (short_slot_s <= 0 || long_slot_s <= 0 || fsa_state_s <= 0)
      throw ConfigError("clock: slot durations must be positive");
    if (long_slot_s % short_slot_s != 0)
      throw ConfigError("clock: LongSlot not a multiple of ShortSlot");
    if (fsa_state_s % long_slot_s != 0)
      throw ConfigError("clock: FSA state not a multiple of LongSlot");
  }

  std::int64_t shorts_per_long() const { return long_slot_s / short_slot_s; }  // M
  std::int64_t longs_per_state() const { return fsa_state_s / long_slot_s; }
  std::int64_t shorts_per_state() const { return fsa_state_s / short_slot_s; }

  std::int64_t first_long_of_state(std::int64_t state) const {
    return state * longs_per_state() + 1;
  }
  std::int64_t state_of_long(std::int64_t n) const { return (n - 1) / longs_per_state(); }
  std::int64_t state_of_short(std::int64_t k) const { return (k - 1) / shorts_per_state(); }

  // ShortSlots of LongSlot n are {M*n - (M-1), ..., M*n}.
  std::int64_t first_short_of_long(std::int64_t n) const {
    return shorts_per_long() * n - (shorts_per_long() - 1);
  }
  std::int64_t last_short_of_long(std::int64_t n) const { return shorts_per_long() * n; }
  std::int64_t long_of_short(std::int64_t k) const { return (k - 1) / shorts_per_long() + 1; }

  double state_start_s(std::int64_t state) const {
    return static_cast<double>(state * fsa_state_s);
  }
  double long_start_s(std::int64_t n) const { return static_cast<double>((n - 1) * long_slot_s); }
  double short_start_s(std::int64_t k) const {
    return static_cast<double>((k - 1) * short_slot_s);
  }

  // Converts a slot index to native seconds for the given unit.
  double slot_len_s(SlotKind kind) const {
    return static_cast<double>(kind == SlotKind::Long ? long_slot_s : short_slot_s);
  }
};

}  // namespace jcpd
