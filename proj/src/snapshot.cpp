#include "cmarl/snapshot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmarl/errors.hpp"

namespace cmarl {

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

void write_qtable_snapshot(const std::string& path, const QTableSnapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open snapshot for writing: " + path);
  out << "# cmarl-qtable v" << kSnapshotSchemaVersion << "\n";
  out << "env_hash " << snap.env_hash << "\n";
  out << "agents " << snap.tables.size() << "\n";
  for (std::size_t i = 0; i < snap.tables.size(); ++i) {
    const QTable& t = snap.tables[i];
    out << "alpha " << fmt(t.alpha) << " gamma " << fmt(t.gamma) << " default "
        << fmt(t.default_value) << "\n";
    std::vector<const StateKey*> keys;
    keys.reserve(t.entries.size());
    for (const auto& [k, _] : t.entries) keys.push_back(&k);
    std::sort(keys.begin(), keys.end(),
              [](const StateKey* a, const StateKey* b) { return *a < *b; });
    out << "agent " << i << " entries " << keys.size() << "\n";
    for (const StateKey* k : keys) {
      const auto& row = t.entries.at(*k);
      out << key_to_hex(*k);
      for (double v : row) out << ' ' << fmt(v);
      out << "\n";
    }
  }
  if (!out) throw DataError("write failed: " + path);
}

QTableSnapshot read_qtable_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open snapshot: " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty snapshot");
  if (line != "# cmarl-qtable v" + std::to_string(kSnapshotSchemaVersion))
    throw SchemaVersionMismatch(path + ": unsupported snapshot header '" + line + "'");

  QTableSnapshot snap;
  std::string word;
  std::size_t n_agents = 0;
  {
    if (!std::getline(in, line)) throw DataError(path + ": truncated snapshot");
    std::istringstream ss(line);
    if (!(ss >> word >> snap.env_hash) || word != "env_hash")
      throw DataError(path + ": expected env_hash line");
  }
  {
    if (!std::getline(in, line)) throw DataError(path + ": truncated snapshot");
    std::istringstream ss(line);
    if (!(ss >> word >> n_agents) || word != "agents")
      throw DataError(path + ": expected agents line");
  }

  for (std::size_t i = 0; i < n_agents; ++i) {
    QTable t;
    {
      if (!std::getline(in, line)) throw DataError(path + ": truncated snapshot");
      std::istringstream ss(line);
      std::string w1, w2, w3;
      if (!(ss >> w1 >> t.alpha >> w2 >> t.gamma >> w3 >> t.default_value) ||
          w1 != "alpha" || w2 != "gamma" || w3 != "default")
        throw DataError(path + ": expected alpha/gamma/default line");
    }
    std::size_t count = 0;
    {
      if (!std::getline(in, line)) throw DataError(path + ": truncated snapshot");
      std::istringstream ss(line);
      std::size_t idx = 0;
      if (!(ss >> word >> idx >> word >> count))
        throw DataError(path + ": expected agent header line");
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (!std::getline(in, line)) throw DataError(path + ": truncated snapshot");
      std::istringstream ss(line);
      std::string hex;
      std::array<double, kActionCount> row{};
      if (!(ss >> hex >> row[0] >> row[1] >> row[2] >> row[3] >> row[4]))
        throw DataError(path + ": malformed table row");
      t.entries.emplace(key_from_hex(hex), row);
    }
    snap.tables.push_back(std::move(t));
  }
  return snap;
}

}  // namespace cmarl
