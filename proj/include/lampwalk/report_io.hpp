#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lampwalk/approximation.hpp"
#include "lampwalk/free_group.hpp"
#include "lampwalk/schreier_graph.hpp"
#include "lampwalk/walk_stats.hpp"

namespace lampwalk {

// Insertion-ordered so that emitted files are byte-stable.
using Json = nlohmann::ordered_json;

// Rationals serialize as exact "p/q" strings.
Json to_json(const Rational& q);
Json to_json(const Config& c);
Json to_json(const StructuralAddress& a);
// Timings are left out; they belong in the manifest.
Json to_json(const VerifyReport& r);
Json to_json(const BasicVerifyReport<ZVertex>& r);
Json to_json(const WeakReport& r);
Json to_json(const Construction& c);
// Adjacency list: vertices as "num/2^exp", edges labeled a/A/b/B.
Json to_json(const Ball& b);
Json to_json(const McEstimate& m);
Json to_json(const DecayReport& d);
Json to_json(const ZWitness& w);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Lower-case hex SHA-1 of "blob <size>\0" + content.
std::string git_blob_sha1(std::string_view content);

// Collects outputs in memory; nothing touches disk until commit().
class OutputSet {
 public:
  void add(std::string name, std::string content);
  const std::map<std::string, std::string>& files() const { return files_; }
  std::map<std::string, std::string> hashes() const;
  // Creates dir if needed and writes every file. Throws Error on I/O failure.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

struct RunManifest {
  std::string command;
  Json config;  // every effective option, defaults included
  Json seeds = Json::array();
  Json caps = Json::object();
  std::string orientation;
  std::map<std::string, std::string> hashes;
  double wall_clock_seconds = 0;

  Json to_json() const;
};

}  // namespace lampwalk
