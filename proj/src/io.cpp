#include "rsched/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace rsched {

namespace {

using nlohmann::json;

Time int_field(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing field \"" + key + "\"");
  if (it->is_number_unsigned() &&
      it->get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<Time>::max())) {
    throw std::invalid_argument("overflow risk: field \"" + key + "\" exceeds 63 bits");
  }
  if (!it->is_number_integer() && !it->is_number_unsigned()) {
    throw std::invalid_argument("field \"" + key + "\" must be an integer");
  }
  return it->get<Time>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end()) {
      throw std::invalid_argument("unknown field \"" + key + "\" in " + where);
    }
  }
}

GeneratorMeta meta_from_json(const json& j) {
  reject_unknown(j, {"source", "threshold", "seed", "m"}, "metadata");
  GeneratorMeta meta;
  if (j.contains("source")) meta.source = j.at("source").get<std::string>();
  if (j.contains("threshold")) meta.threshold = j.at("threshold").get<std::int64_t>();
  if (j.contains("seed")) meta.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("m")) meta.m = j.at("m").get<std::int64_t>();
  return meta;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

Instance instance_from_json(const json& j) {
  return instance_with_meta_from_json(j).instance;
}

GeneratedInstance instance_with_meta_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("instance must be a JSON object");
  reject_unknown(j, {"gamma", "jobs", "metadata"}, "instance");
  if (!j.contains("jobs") || !j.at("jobs").is_array()) {
    throw std::invalid_argument("missing field \"jobs\"");
  }

  GeneratedInstance out;
  out.instance.gamma = int_field(j, "gamma");
  for (const json& job_json : j.at("jobs")) {
    if (!job_json.is_object()) throw std::invalid_argument("job entries must be objects");
    reject_unknown(job_json, {"id", "p_bar", "p_hat", "d"}, "job");
    Job job;
    job.id = static_cast<int>(int_field(job_json, "id"));
    job.p_bar = int_field(job_json, "p_bar");
    job.p_hat = int_field(job_json, "p_hat");
    job.d = int_field(job_json, "d");
    out.instance.jobs.push_back(job);
  }
  out.instance = validate_instance(std::move(out.instance));
  if (j.contains("metadata")) out.meta = meta_from_json(j.at("metadata"));
  return out;
}

nlohmann::json instance_to_json(const Instance& inst, const GeneratorMeta* meta) {
  json j;
  j["gamma"] = inst.gamma;
  j["jobs"] = json::array();
  for (const Job& job : inst.jobs) {
    j["jobs"].push_back({{"id", job.id}, {"p_bar", job.p_bar}, {"p_hat", job.p_hat}, {"d", job.d}});
  }
  if (meta != nullptr) {
    json m;
    m["source"] = meta->source;
    if (meta->threshold) m["threshold"] = *meta->threshold;
    if (meta->seed) m["seed"] = *meta->seed;
    if (meta->m) m["m"] = *meta->m;
    j["metadata"] = m;
  }
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("parse error in " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const std::string& path, const Instance& inst, const GeneratorMeta* meta) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << instance_to_json(inst, meta).dump(2) << "\n";
}

std::string instance_digest(const Instance& inst) {
  const std::string canonical = instance_to_json(inst).dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  return std::string(buf);
}

nlohmann::json record_to_json(const SolutionRecord& rec) {
  json j;
  j["format"] = 1;
  j["instance"] = rec.instance_digest;
  j["algorithm"] = rec.algorithm;
  j["objective"] = rec.objective;
  j["early"] = rec.early;
  j["sigma"] = rec.sigma;
  j["certificate"] = json::array();
  for (std::size_t i = 0; i < rec.certificate.size(); ++i) {
    j["certificate"].push_back(
        {{"id", rec.sigma[i]}, {"worst_completion", rec.certificate[i]}});
  }
  if (rec.mu) {
    if (rec.mu->size() == 1) {
      j["mu"] = rec.mu->front();
    } else {
      j["mu"] = *rec.mu;
    }
  }
  if (rec.wall_time_ms) j["wall_time_ms"] = *rec.wall_time_ms;
  return j;
}

SolutionRecord record_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("record must be a JSON object");
  if (j.value("format", 0) != 1) throw std::invalid_argument("unsupported record format");
  SolutionRecord rec;
  rec.instance_digest = j.value("instance", "");
  rec.algorithm = j.value("algorithm", "");
  rec.objective = j.at("objective").get<int>();
  rec.early = j.at("early").get<std::vector<int>>();
  rec.sigma = j.at("sigma").get<std::vector<int>>();
  if (j.contains("certificate")) {
    for (const json& c : j.at("certificate")) {
      rec.certificate.push_back(c.at("worst_completion").get<Time>());
    }
  }
  if (j.contains("mu")) {
    if (j.at("mu").is_array()) {
      rec.mu = j.at("mu").get<std::vector<Time>>();
    } else {
      rec.mu = std::vector<Time>{j.at("mu").get<Time>()};
    }
  }
  if (j.contains("wall_time_ms")) rec.wall_time_ms = j.at("wall_time_ms").get<double>();
  return rec;
}

VerifyResult verify_record(const Instance& inst, const SolutionRecord& rec) {
  EvaluatedSchedule eval;
  try {
    eval = evaluate_schedule(inst, rec.sigma);
  } catch (const std::invalid_argument& e) {
    return {false, e.what(), 0};
  }

  std::vector<std::uint8_t> claimed_early(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (int id : rec.early) {
    if (id < 1 || id > inst.n()) return {false, "early id out of range", id};
    claimed_early[static_cast<std::size_t>(id)] = 1;
  }

  // Every claimed-early job must be on time in the worst case; the order of
  // the remaining (tardy) jobs is free.
  for (std::size_t i = 0; i < rec.sigma.size(); ++i) {
    const int id = rec.sigma[i];
    if (claimed_early[static_cast<std::size_t>(id)] && eval.tardy_flag[i]) {
      return {false, "claimed-early job misses its due date in the worst case", id};
    }
  }
  for (std::size_t i = 0; i < rec.certificate.size(); ++i) {
    if (i >= rec.sigma.size()) return {false, "certificate longer than schedule", 0};
    if (rec.certificate[i] != eval.worst_completion[i]) {
      return {false, "certificate mismatch", rec.sigma[i]};
    }
  }
  const int expected = inst.n() - static_cast<int>(rec.early.size());
  if (rec.objective != expected) {
    return {false,
            "objective " + std::to_string(rec.objective) + " does not equal n - |early| = " +
                std::to_string(expected),
            0};
  }
  return {true, "", 0};
}

}  // namespace rsched
