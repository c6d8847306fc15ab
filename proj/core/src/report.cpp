#include "surgery/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace surgery::report {

using obstruction::BranchResult;
using obstruction::FilterResult;
using obstruction::ObstructionReport;
using obstruction::Verdict;
using obstruction::Violation;
using json = nlohmann::ordered_json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

json violation_json(const Violation& v) {
  return json{{"kind", v.kind}, {"s", v.s}, {"detail", v.detail}};
}

Violation violation_from(const json& j) {
  return {j.at("kind").get<std::string>(), j.at("s").get<int>(),
          j.at("detail").get<std::string>()};
}

Verdict verdict_from_name(const std::string& s) {
  if (s == "REFUTED") return Verdict::Refuted;
  if (s == "SURVIVES") return Verdict::Survives;
  if (s == "CONSTRUCTED") return Verdict::Constructed;
  if (s == "UNKNOWN-CASE-4") return Verdict::UnknownCase4;
  throw std::domain_error("unknown verdict: " + s);
}

}  // namespace

std::string to_json_line(const ObstructionReport& rep) {
  json j;
  j["p"] = rep.candidate.p;
  j["q"] = rep.candidate.q_signed;
  j["m"] = rep.candidate.m;
  j["k"] = rep.candidate.k;
  j["qprime"] = rep.candidate.qprime;
  j["framing"] = rep.candidate.framing > 0 ? "positive" : "negative";
  j["filters"] = json::array();
  for (const auto& f : rep.filters)
    j["filters"].push_back(json{{"name", f.name}, {"pass", f.pass}, {"witness", f.witness}});
  j["full_orbit"] = rep.full_orbit;
  j["s_max"] = rep.s_max;
  j["branches"] = json::array();
  for (const auto& b : rep.branches) {
    json bj;
    bj["j"] = b.j;
    bj["prefix_integral"] = b.prefix_integral;
    if (b.prefix_integral) {
      bj["prefix"] = json::array();
      for (const auto& x : b.prefix) bj["prefix"].push_back(x.get_str());
    }
    bj["pass"] = b.pass;
    bj["violations"] = json::array();
    for (const auto& v : b.violations) bj["violations"].push_back(violation_json(v));
    if (!b.N.empty()) {
      bj["N"] = json::array();
      for (const auto& x : b.N) bj["N"].push_back(to_string(x));
    }
    j["branches"].push_back(std::move(bj));
  }
  j["verdict"] = obstruction::verdict_name(rep.verdict);
  j["reason"] = rep.reason;
  if (rep.winning_j) j["winning_j"] = *rep.winning_j;
  j["n_sequence"] = json::array();
  for (const auto& [s, t, N] : rep.n_sequence)
    j["n_sequence"].push_back(json{{"s", s}, {"t", t}, {"N", to_string(N)}});
  return j.dump();
}

ObstructionReport from_json_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("report parse error: ") + e.what());
  }
  ObstructionReport rep;
  rep.candidate.p = j.at("p").get<std::int64_t>();
  rep.candidate.q_signed = j.at("q").get<std::int64_t>();
  rep.candidate.m = j.at("m").get<std::int64_t>();
  rep.candidate.k = j.at("k").get<std::int64_t>();
  rep.candidate.qprime = j.at("qprime").get<std::int64_t>();
  rep.candidate.framing = j.at("framing").get<std::string>() == "positive" ? 1 : -1;
  for (const auto& f : j.at("filters"))
    rep.filters.push_back({f.at("name").get<std::string>(), f.at("pass").get<bool>(),
                           f.at("witness").get<std::string>()});
  rep.full_orbit = j.at("full_orbit").get<bool>();
  rep.s_max = j.at("s_max").get<int>();
  for (const auto& bj : j.at("branches")) {
    BranchResult b;
    b.j = bj.at("j").get<std::int64_t>();
    b.prefix_integral = bj.at("prefix_integral").get<bool>();
    if (b.prefix_integral) {
      size_t i = 0;
      for (const auto& x : bj.at("prefix")) b.prefix[i++] = Integer(x.get<std::string>());
    }
    b.pass = bj.at("pass").get<bool>();
    for (const auto& v : bj.at("violations")) b.violations.push_back(violation_from(v));
    if (bj.contains("N"))
      for (const auto& x : bj.at("N")) b.N.push_back(parse_rational(x.get<std::string>()));
    rep.branches.push_back(std::move(b));
  }
  rep.verdict = verdict_from_name(j.at("verdict").get<std::string>());
  rep.reason = j.at("reason").get<std::string>();
  if (j.contains("winning_j")) rep.winning_j = j.at("winning_j").get<std::int64_t>();
  for (const auto& e : j.at("n_sequence"))
    rep.n_sequence.emplace_back(e.at("s").get<int>(), e.at("t").get<std::int64_t>(),
                                parse_rational(e.at("N").get<std::string>()));
  return rep;
}

namespace {

std::string n_cell(const Integer& v) { return v.get_str(); }

std::string base_cols(const ObstructionReport& rep) {
  std::ostringstream os;
  os << rep.candidate.p << "," << rep.candidate.q_signed << "," << rep.candidate.m
     << "," << rep.candidate.k;
  return os.str();
}

}  // namespace

std::vector<std::string> to_csv_rows(const ObstructionReport& rep) {
  std::vector<std::string> rows;
  const std::string base = base_cols(rep);
  if (rep.verdict == Verdict::Constructed || rep.verdict == Verdict::UnknownCase4 ||
      rep.branches.empty()) {
    rows.push_back(base + ",,,,," + obstruction::verdict_name(rep.verdict) + "," +
                   rep.reason);
    return rows;
  }

  struct ProfileInfo {
    bool pass = false;
    std::int64_t j = 0;  // smallest j with this profile (passing one preferred)
    std::string fail;
  };
  std::map<std::array<std::string, 4>, ProfileInfo> profiles;
  for (const auto& b : rep.branches) {
    if (!b.prefix_integral) continue;
    std::array<std::string, 4> key{n_cell(b.prefix[0]), n_cell(b.prefix[1]),
                                   n_cell(b.prefix[2]), n_cell(b.prefix[3])};
    auto [it, inserted] = profiles.try_emplace(key);
    auto& info = it->second;
    if (inserted) {
      info.pass = b.pass;
      info.j = b.j;
      if (!b.pass && !b.violations.empty())
        info.fail = b.violations.front().kind + " " + b.violations.front().detail;
    } else if (b.pass && !info.pass) {
      info.pass = true;
      info.j = b.j;
      info.fail.clear();
    }
  }
  if (profiles.empty()) {
    rows.push_back(base + ",,,,,REFUTED," + rep.reason);
    return rows;
  }
  for (const auto& [key, info] : profiles) {
    std::ostringstream os;
    os << base << "," << key[0] << "," << key[1] << "," << key[2] << "," << key[3] << ",";
    if (info.pass)
      os << "SURVIVES,j=" << info.j;
    else
      os << "REFUTED," << info.fail << " j=" << info.j;
    rows.push_back(os.str());
  }
  return rows;
}

std::string to_text(const ObstructionReport& rep) {
  std::ostringstream os;
  os << "candidate p=" << rep.candidate.p << " q=" << rep.candidate.q_signed
     << " m=" << rep.candidate.m << " k=" << rep.candidate.k
     << " q'=" << rep.candidate.qprime << " framing="
     << (rep.candidate.framing > 0 ? "positive" : "negative") << "\n";
  for (const auto& f : rep.filters)
    os << "  [" << (f.pass ? "pass" : "FAIL") << "] " << f.name << ": " << f.witness << "\n";
  if (!rep.branches.empty()) {
    os << "  branches (odd j in [1," << rep.candidate.qprime - 1 << "]), s_max=" << rep.s_max
       << (rep.full_orbit ? " (full orbit)" : " (closed forms, s<=3)") << ":\n";
    for (const auto& b : rep.branches) {
      if (!b.prefix_integral) continue;
      os << "    j=" << b.j << " N0..N3=";
      for (size_t i = 0; i < 4; ++i) os << (i ? "," : "") << b.prefix[i].get_str();
      os << (b.pass ? "  pass" : "  fail");
      if (!b.pass && !b.violations.empty())
        os << " (" << b.violations.front().kind << " " << b.violations.front().detail << ")";
      os << "\n";
    }
  }
  if (!rep.n_sequence.empty()) {
    os << "  n-sequence:";
    for (const auto& [s, t, N] : rep.n_sequence) {
      os << " N[" << s << "|t=" << t << "]=" << to_string(N);
      if (s >= 8 && rep.n_sequence.size() > 12) {
        os << " ...";
        break;
      }
    }
    os << "\n";
  }
  os << "  verdict: " << obstruction::verdict_name(rep.verdict) << " (" << rep.reason << ")\n";
  return os.str();
}

std::string manifest_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["parameters"] = json::object();
  for (const auto& [k, v] : m.parameters) j["parameters"][k] = v;
  j["tool_version"] = m.tool_version;
  j["output_digest"] = m.output_digest;
  return j.dump(2) + "\n";
}

}  // namespace surgery::report
