#include "cmarl/trace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cmarl/errors.hpp"

namespace cmarl {

using nlohmann::json;

namespace {

json obs_to_json(const Observation& o) {
  json j;
  j["center"] = {o.center.row, o.center.col};
  j["mask"] = o.mask;
  return j;
}

Observation obs_from_json(const json& j, int mask_radius) {
  Observation o;
  o.center = {j.at("center").at(0).get<int>(), j.at("center").at(1).get<int>()};
  o.mask_radius = mask_radius;
  o.mask = j.at("mask").get<std::vector<std::uint8_t>>();
  return o;
}

json event_to_json(const StepEvent& e) {
  json j;
  j["kind"] = e.kind == StepEvent::Kind::Capture ? "capture" : "chop";
  j["pos"] = {e.pos.row, e.pos.col};
  j["level"] = e.tree_level;
  j["agents"] = e.agents;
  return j;
}

StepEvent event_from_json(const json& j) {
  StepEvent e;
  e.kind = j.at("kind").get<std::string>() == "capture" ? StepEvent::Kind::Capture
                                                        : StepEvent::Kind::Chop;
  e.pos = {j.at("pos").at(0).get<int>(), j.at("pos").at(1).get<int>()};
  e.tree_level = j.at("level").get<int>();
  e.agents = j.at("agents").get<std::vector<int>>();
  return e;
}

}  // namespace

void write_traces_jsonl(const std::string& path, const TraceMeta& meta,
                        const std::vector<EpisodeTrace>& episodes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open trace file for writing: " + path);

  json header;
  header["v"] = kTraceSchemaVersion;
  header["kind"] = "meta";
  header["task"] = task_name(meta.task);
  header["n_agents"] = meta.n_agents;
  header["mask_radius"] = meta.mask_radius;
  header["tree_level_max"] = meta.tree_level_max;
  header["config_hash"] = meta.config_hash;
  out << header.dump() << '\n';

  for (const EpisodeTrace& ep : episodes) {
    for (const TraceStep& st : ep.steps) {
      json j;
      j["v"] = kTraceSchemaVersion;
      j["kind"] = "step";
      j["episode"] = ep.episode;
      j["step"] = st.step;
      json obs = json::array();
      for (const Observation& o : st.obs) obs.push_back(obs_to_json(o));
      j["obs"] = std::move(obs);
      json acts = json::array();
      for (Action a : st.actions) acts.push_back(static_cast<int>(a));
      j["actions"] = std::move(acts);
      j["reward"] = st.reward;
      json events = json::array();
      for (const StepEvent& e : st.events) events.push_back(event_to_json(e));
      j["events"] = std::move(events);
      j["oracle_c"] = st.oracle_c;
      out << j.dump() << '\n';
    }
  }
  if (!out) throw DataError("write failed: " + path);
}

TraceFile read_traces_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open trace file: " + path);

  TraceFile file;
  std::string line;
  long line_no = 0;
  bool have_meta = false;
  EpisodeTrace* current = nullptr;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": malformed JSON line (" +
                      e.what() + ")");
    }
    try {
      int version = j.at("v").get<int>();
      if (version != kTraceSchemaVersion)
        throw SchemaVersionMismatch(path + ":" + std::to_string(line_no) +
                                    ": unsupported trace schema version " +
                                    std::to_string(version));
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "meta") {
        file.meta.task = task_from_name(j.at("task").get<std::string>());
        file.meta.n_agents = j.at("n_agents").get<int>();
        file.meta.mask_radius = j.at("mask_radius").get<int>();
        file.meta.tree_level_max = j.at("tree_level_max").get<int>();
        file.meta.config_hash = j.at("config_hash").get<std::string>();
        have_meta = true;
        continue;
      }
      if (kind != "step")
        throw DataError(path + ":" + std::to_string(line_no) + ": unknown line kind '" +
                        kind + "'");
      if (!have_meta)
        throw DataError(path + ":" + std::to_string(line_no) +
                        ": step line before meta header");

      long episode = j.at("episode").get<long>();
      if (current == nullptr || current->episode != episode) {
        file.episodes.push_back({episode, {}});
        current = &file.episodes.back();
      }
      TraceStep st;
      st.step = j.at("step").get<int>();
      for (const json& jo : j.at("obs"))
        st.obs.push_back(obs_from_json(jo, file.meta.mask_radius));
      for (const json& ja : j.at("actions"))
        st.actions.push_back(static_cast<Action>(ja.get<int>()));
      st.reward = j.at("reward").get<double>();
      for (const json& je : j.at("events")) st.events.push_back(event_from_json(je));
      st.oracle_c = j.at("oracle_c").get<std::vector<std::uint8_t>>();
      current->steps.push_back(std::move(st));
    } catch (const SchemaVersionMismatch&) {
      throw;
    } catch (const DataError&) {
      throw;
    } catch (const json::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": bad step record (" +
                      e.what() + ")");
    }
  }
  if (!have_meta) throw DataError(path + ": missing meta header line");
  return file;
}

std::vector<TraceFile> read_traces_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir);
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<TraceFile> files;
  files.reserve(paths.size());
  for (const std::string& p : paths) files.push_back(read_traces_jsonl(p));
  return files;
}

}  // namespace cmarl
