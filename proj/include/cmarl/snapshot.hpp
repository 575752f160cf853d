#pragma once

#include <string>
#include <vector>

#include "cmarl/qlearn.hpp"

namespace cmarl {

inline constexpr int kSnapshotSchemaVersion = 1;

struct QTableSnapshot {
  std::vector<QTable> tables;
  std::string env_hash;
};

// Sorted text snapshot:
//   # cmarl-qtable v1
//   env_hash <hex>
//   agents <n>
//   alpha <a> gamma <g> default <d>
//   agent <i> entries <k>
//   <state key hex> <q0> <q1> <q2> <q3> <q4>
// Entries are sorted by state key so equal tables always serialize to
// equal bytes; values round-trip exactly via %.17g.
void write_qtable_snapshot(const std::string& path, const QTableSnapshot& snap);
QTableSnapshot read_qtable_snapshot(const std::string& path);

}  // namespace cmarl
