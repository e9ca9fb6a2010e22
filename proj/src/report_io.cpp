#include "lampwalk/report_io.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <fstream>

#include "lampwalk/errors.hpp"

namespace lampwalk {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const Config& c) {
  Json out = Json::array();
  for (const Dyadic& x : c) out.push_back(x.str());
  return out;
}

Json to_json(const StructuralAddress& a) {
  std::string path;
  for (Side s : a.path) path.push_back(s == Side::Left ? 'L' : 'R');
  Json out{{"path", path}, {"offset", a.offset}};
  if (a.offset > 0) out["hair_exit"] = std::string(1, to_char(a.hair_exit));
  return out;
}

namespace {

template <class V>
Json verify_json(const BasicVerifyReport<V>& r) {
  Json worst_config = Json::array();
  for (const V& v : r.worst_config) worst_config.push_back(LampAction<V>::vertex_str(v));
  return Json{{"n", r.n},
              {"beta", to_json(r.beta)},
              {"pass", r.pass},
              {"base_value", to_json(r.base_value)},
              {"worst_word", r.worst_word.str()},
              {"worst_config", worst_config},
              {"worst_value", to_json(r.worst_value)},
              {"worst_deviation", to_json(r.worst_deviation)},
              {"worst_deviation_approx", to_double(r.worst_deviation)},
              {"configurations_examined", r.words_examined}};
}

}  // namespace

Json to_json(const VerifyReport& r) { return verify_json(r); }
Json to_json(const BasicVerifyReport<ZVertex>& r) { return verify_json(r); }

Json to_json(const WeakReport& r) {
  return Json{{"base_value", to_json(r.base_value)},
              {"markov_value", to_json(r.markov_value)},
              {"deviation", to_json(r.deviation)},
              {"tol", to_json(r.tol)},
              {"pass", r.pass}};
}

Json to_json(const Construction& c) {
  Json bases = Json::array();
  for (const auto& b : c.bases) bases.push_back(to_json(b));
  return Json{{"recipe", c.recipe},
              {"config", to_json(c.config)},
              {"size", c.config.size()},
              {"bases", bases},
              {"offset", c.offset},
              {"notes", c.notes}};
}

Json to_json(const Ball& b) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    vertices.push_back(Json{{"id", b.vertices[i].str()}, {"distance", b.distance[i]}});
  }
  Json edges = Json::array();
  for (const auto& e : b.edges) {
    edges.push_back(Json{{"from", b.vertices[static_cast<std::size_t>(e.from)].str()},
                         {"label", std::string(1, to_char(e.label))},
                         {"to", b.vertices[static_cast<std::size_t>(e.to)].str()}});
  }
  return Json{{"center", b.center.str()}, {"radius", b.radius}, {"vertices", vertices}, {"edges", edges}};
}

Json to_json(const McEstimate& m) {
  return Json{{"mean", m.mean}, {"stderr", m.stderr_}, {"trials", m.trials}, {"cap", m.cap}, {"caveat", m.caveat}};
}

Json to_json(const DecayReport& d) {
  Json cps = Json::array();
  for (const auto& c : d.checkpoints) {
    cps.push_back(Json{{"step", c.step},
                       {"median", to_json(c.median)},
                       {"median_approx", to_double(c.median)},
                       {"q25", to_json(c.q25)},
                       {"q75", to_json(c.q75)},
                       {"min", to_json(c.min)},
                       {"max", to_json(c.max)},
                       {"mean", c.mean},
                       {"nonempty_fraction", c.nonempty_fraction},
                       {"mean_size", c.mean_size}});
  }
  return Json{{"fn", d.fn},
              {"checkpoints", cps},
              {"states_checked", d.states_checked},
              {"supermartingale_violations", d.supermartingale_violations},
              {"decay_asserted", d.decay_asserted},
              {"decayed", d.decayed},
              {"notice", d.notice},
              {"pass", d.pass()}};
}

Json to_json(const ZWitness& w) {
  Json image = Json::array();
  for (const ZVertex& v : w.image) image.push_back(v.str());
  return Json{{"case", w.case_index}, {"word", w.word.str()}, {"ratio", to_json(w.ratio)}, {"image", image}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw PreconditionFailed("CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      if (cells[i].find_first_of(",\"\n") != std::string::npos) {
        out.push_back('"');
        for (char c : cells[i]) {
          if (c == '"') out.push_back('"');
          out.push_back(c);
        }
        out.push_back('"');
      } else {
        out += cells[i];
      }
    }
    out.push_back('\n');
    return out;
  };
  std::string out = line(header_);
  for (const auto& r : rows_) out += line(r);
  return out;
}

std::string git_blob_sha1(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest);
  std::string hex;
  char buf[3];
  for (unsigned char c : digest) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  return hex;
}

void OutputSet::add(std::string name, std::string content) { files_[std::move(name)] = std::move(content); }

std::map<std::string, std::string> OutputSet::hashes() const {
  std::map<std::string, std::string> out;
  for (const auto& [name, content] : files_) out[name] = git_blob_sha1(content);
  return out;
}

void OutputSet::commit(const std::filesystem::path& dir) const {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : files_) {
    std::ofstream out(dir / name, std::ios::binary);
    out << content;
    if (!out) throw Error("cannot write " + (dir / name).string());
  }
}

Json RunManifest::to_json() const {
  Json h = Json::object();
  for (const auto& [name, sha] : hashes) h[name] = sha;
  return Json{{"command", command},         {"config", config}, {"seeds", seeds},
              {"caps", caps},               {"orientation", orientation},
              {"hashes", h},                {"wall_clock_seconds", wall_clock_seconds}};
}

}  // namespace lampwalk
