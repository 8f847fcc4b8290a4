// Copyright 2026 The Labov Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "labov/service.h"

#include <cctype>
#include <mutex>
#include <set>
#include <stdexcept>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "labov/adjudication.h"
#include "labov/errors.h"
#include "labov/lat_format.h"
#include "labov/report.h"
#include "labov/text.h"

namespace labov {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr std::string_view kJsonType = "application/json";

HttpResponse Json(int status, const ojson &body) {
  HttpResponse r;
  r.status = status;
  r.body = DumpJson(body);
  r.headers["Content-Type"] = std::string(kJsonType);
  return r;
}

HttpResponse Error(int status, std::string_view message) {
  ojson j;
  j["error"] = message;
  return Json(status, j);
}

std::vector<std::string> SplitPath(std::string_view path) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    const size_t j = std::min(path.find('/', i), path.size());
    parts.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

nlohmann::json ParseBody(const HttpRequest &request) {
  try {
    return nlohmann::json::parse(request.body);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("request body is not JSON: ") + e.what());
  }
}

Bundle CheckedBundle(const nlohmann::json &j) {
  Bundle b = BundleFromJson(j);
  CheckBundle(b);
  return b;
}

// A bundle document or an array of them.
std::vector<Bundle> BundlesFromBody(const nlohmann::json &j) {
  std::vector<Bundle> out;
  if (j.is_array()) {
    for (const auto &e : j) out.push_back(CheckedBundle(e));
  } else {
    out.push_back(CheckedBundle(j));
  }
  return out;
}

std::string Query(const HttpRequest &r, const std::string &key,
                  std::string fallback) {
  auto it = r.query.find(key);
  return it == r.query.end() ? fallback : it->second;
}

int QueryInt(const HttpRequest &r, const std::string &key, int fallback) {
  auto it = r.query.find(key);
  if (it == r.query.end()) return fallback;
  try {
    size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception &) {
  }
  throw ValidationError("query parameter " + key + " must be an integer");
}

}  // namespace

std::string LayerVersion(const Bundle &bundle, std::string_view annotator) {
  const AnnotatorLayer *layer = bundle.FindLayer(annotator);
  if (layer == nullptr) return "absent";
  return Sha256Hex(LayerToJson(*layer).dump()).substr(0, 16);
}

AnnotationService::AnnotationService(ServiceConfig config)
    : config_(std::move(config)) {
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(config_.data_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  for (const fs::path &f : files) {
    const Bundle b = ReadBundleFile(f);
    const std::string &id = b.meta.fragment_id;
    if (fragments_.count(id) > 0) {
      throw ValidationError("fragment '" + id + "' is stored twice: " +
                            fragments_.at(id).path.string() + " and " +
                            f.string());
    }
    fragments_.emplace(id, Entry{f, std::make_unique<std::shared_mutex>()});
  }
}

AnnotationService::~AnnotationService() = default;

std::vector<std::string> AnnotationService::FragmentIds() const {
  std::vector<std::string> ids;
  for (const auto &[id, entry] : fragments_) ids.push_back(id);
  return ids;
}

Bundle AnnotationService::ReadLocked(const Entry &entry) const {
  std::shared_lock lock(*entry.mutex);
  return ReadBundleFile(entry.path);
}

HttpResponse AnnotationService::Handle(const HttpRequest &request) {
  const std::vector<std::string> p = SplitPath(request.path);
  const std::string &m = request.method;
  try {
    if (!p.empty() && p[0] == "fragments") {
      if (p.size() > 1 && fragments_.count(p[1]) == 0) {
        return Error(404, "unknown fragment '" + p[1] + "'");
      }
      if (p.size() == 1 && m == "GET") return ListFragments();
      if (p.size() == 2 && m == "GET") return GetFragment(p[1]);
      if (p.size() == 4 && p[2] == "layers") {
        if (m == "GET") return GetLayer(p[1], p[3]);
        if (m == "PUT") return PutLayer(p[1], p[3], request);
        return Error(405, "method not allowed");
      }
    } else if (p.size() == 1 && p[0] == "lint" && m == "POST") {
      return Lint(request);
    } else if (p.size() == 2 && p[0] == "wizard" && m == "POST") {
      if (p[1] == "next") return WizardNext(request);
      if (p[1] == "decide") return WizardDecide(request);
    } else if (p.size() == 2 && p[0] == "metrics" && m == "POST") {
      if (p[1] == "segmentation") return SegMetrics(request);
      if (p[1] == "labels") return LabelMetrics(request);
    } else if (!p.empty() && p[0] == "adjudicate" && m == "POST") {
      if (p.size() == 1) return AdjudicateBundle(request);
      if (p.size() == 2 && p[1] == "resolve") return Resolve(request);
    } else if (p.size() == 1 && p[0] == "stats" && m == "GET") {
      return Stats(request);
    }
    return Error(404, "no route for " + m + " " + request.path);
  } catch (const ParseError &e) {
    return Error(400, e.what());
  } catch (const ValidationError &e) {
    return Error(400, e.what());
  } catch (const UndefinedMetric &e) {
    return Error(422, e.what());
  } catch (const nlohmann::json::exception &e) {
    return Error(400, e.what());
  } catch (const std::out_of_range &e) {
    return Error(400, e.what());
  } catch (const std::exception &e) {
    return Error(500, e.what());
  }
}

HttpResponse AnnotationService::ListFragments() {
  ojson list = ojson::array();
  for (const auto &[id, entry] : fragments_) {
    const Bundle b = ReadLocked(entry);
    ojson e;
    e["fragment_id"] = id;
    e["topic"] = TopicName(b.meta.topic);
    ojson annotators = ojson::array();
    for (const AnnotatorLayer &l : b.layers) annotators.push_back(l.annotator_id);
    e["annotators"] = std::move(annotators);
    e["has_gold"] = b.gold.has_value();
    list.push_back(std::move(e));
  }
  ojson j;
  j["fragments"] = std::move(list);
  return Json(200, j);
}

HttpResponse AnnotationService::GetFragment(const std::string &id) {
  return Json(200, BundleToJson(ReadLocked(fragments_.at(id))));
}

HttpResponse AnnotationService::GetLayer(const std::string &id,
                                         const std::string &annotator) {
  const Bundle b = ReadLocked(fragments_.at(id));
  const AnnotatorLayer *layer = b.FindLayer(annotator);
  if (layer == nullptr) {
    ojson j;
    j["error"] = "no layer for annotator '" + annotator + "'";
    j["version"] = LayerVersion(b, annotator);
    return Json(404, j);
  }
  ojson j;
  j["version"] = LayerVersion(b, annotator);
  j["layer"] = LayerToJson(*layer);
  HttpResponse r = Json(200, j);
  r.headers["ETag"] = LayerVersion(b, annotator);
  return r;
}

HttpResponse AnnotationService::PutLayer(const std::string &id,
                                         const std::string &annotator,
                                         const HttpRequest &request) {
  auto who = request.headers.find("x-annotator");
  if (who == request.headers.end() || who->second.empty()) {
    return Error(400, "missing X-Annotator header");
  }
  if (who->second != annotator) {
    return Error(403, "annotator '" + who->second +
                          "' cannot write the layer of '" + annotator + "'");
  }
  const nlohmann::json body = ParseBody(request);
  std::string version;
  if (auto it = request.headers.find("if-match"); it != request.headers.end()) {
    version = it->second;
  } else if (body.is_object() && body.contains("version")) {
    version = body.at("version").get<std::string>();
  }
  if (version.empty()) {
    return Error(428, "a version token is required (If-Match or \"version\")");
  }
  AnnotatorLayer layer = LayerFromJson(
      body.is_object() && body.contains("layer") ? body.at("layer") : body);
  if (layer.annotator_id != annotator) {
    return Error(400, "layer names annotator '" + layer.annotator_id +
                          "' but was sent for '" + annotator + "'");
  }

  const Entry &entry = fragments_.at(id);
  std::unique_lock lock(*entry.mutex);
  Bundle b = ReadBundleFile(entry.path);
  const std::string current = LayerVersion(b, annotator);
  if (version != current) {
    ojson j;
    j["error"] = "stale version token";
    j["version"] = current;
    return Json(409, j);
  }
  CheckLayer(b, layer);
  const std::vector<LintFinding> findings =
      LintStructure(LayerToFragment(b, layer));
  if (HasErrors(findings)) {
    ojson j = FindingsToJson(findings);
    j["error"] = "layer violates the annotation schema";
    return Json(400, j);
  }
  if (AnnotatorLayer *old = b.FindLayer(annotator)) {
    *old = std::move(layer);
  } else {
    b.layers.push_back(std::move(layer));
  }
  WriteBundleFile(entry.path, b);
  ojson j;
  j["version"] = LayerVersion(b, annotator);
  j["findings"] = FindingsToJson(findings).at("findings");
  HttpResponse r = Json(200, j);
  r.headers["ETag"] = j["version"].get<std::string>();
  return r;
}

HttpResponse AnnotationService::Lint(const HttpRequest &request) {
  const auto first = request.body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || request.body[first] != '{') {
    return Json(200, FindingsToJson(LintFragment(ParseLat(request.body),
                                                 config_.lint)));
  }
  const nlohmann::json body = ParseBody(request);
  if (body.value("format", "") == kBundleFormat) {
    return Json(200, FindingsToJson(LintBundle(CheckedBundle(body),
                                               config_.lint)));
  }
  return Json(200, FindingsToJson(LintFragment(FragmentFromJson(body),
                                               config_.lint)));
}

HttpResponse AnnotationService::WizardNext(const HttpRequest &request) {
  const nlohmann::json body = ParseBody(request);
  const ChartAnswers answers =
      AnswersFromJson(body.contains("answers") ? body.at("answers") : body);
  return Json(200, QuestionToJson(NextQuestion(answers, config_.chart)));
}

HttpResponse AnnotationService::WizardDecide(const HttpRequest &request) {
  const nlohmann::json body = ParseBody(request);
  const ChartAnswers answers =
      AnswersFromJson(body.contains("answers") ? body.at("answers") : body);
  const auto outcome = config_.chart.Decide(answers);
  if (!outcome) {
    ojson j;
    j["error"] = "answers do not reach an outcome";
    j["next"] = QuestionToJson(NextQuestion(answers, config_.chart));
    return Json(400, j);
  }
  return Json(200, DecisionToJson(*outcome));
}

HttpResponse AnnotationService::SegMetrics(const HttpRequest &request) {
  const std::vector<Bundle> bundles = BundlesFromBody(ParseBody(request));
  const std::string pooling = Query(request, "pooling", "global");
  if (pooling != "global" && pooling != "per-fragment") {
    return Error(400, "pooling must be global or per-fragment");
  }
  const SegAgreementReport report = SegAgreementFor(
      bundles, QueryInt(request, "nt", config_.nt),
      pooling == "global" ? BedPooling::kGlobal : BedPooling::kPerFragment);
  return Json(200, SegReportToJson(report));
}

HttpResponse AnnotationService::LabelMetrics(const HttpRequest &request) {
  const std::vector<Bundle> bundles = BundlesFromBody(ParseBody(request));
  const std::string denominator = Query(request, "denominator", "any-coder");
  if (denominator != "any-coder" && denominator != "majority") {
    return Error(400, "denominator must be any-coder or majority");
  }
  return Json(200, LabelAgreementJson(
                       bundles, denominator == "majority"
                                    ? ExactMatchDenominator::kMajority
                                    : ExactMatchDenominator::kAnyCoder));
}

HttpResponse AnnotationService::AdjudicateBundle(const HttpRequest &request) {
  const std::vector<Bundle> bundles = BundlesFromBody(ParseBody(request));
  std::vector<VoteOutcome> outcomes;
  for (const Bundle &b : bundles) {
    auto part = Adjudicate(b);
    outcomes.insert(outcomes.end(), part.begin(), part.end());
  }
  return Json(200, OutcomesToJson(outcomes));
}

HttpResponse AnnotationService::Resolve(const HttpRequest &request) {
  const nlohmann::json body = ParseBody(request);
  const std::vector<Resolution> resolutions =
      ResolutionsFromJson(body.value("resolutions", nlohmann::json::array()));
  const Entry *entry = nullptr;
  Bundle bundle;
  if (body.contains("bundle")) {
    bundle = CheckedBundle(body.at("bundle"));
  } else if (body.contains("fragment_id")) {
    const std::string id = body.at("fragment_id").get<std::string>();
    auto it = fragments_.find(id);
    if (it == fragments_.end()) return Error(404, "unknown fragment '" + id + "'");
    entry = &it->second;
    bundle = ReadLocked(*entry);
  } else {
    return Error(400, "expected \"bundle\" or \"fragment_id\"");
  }
  std::vector<VoteOutcome> outcomes = Adjudicate(bundle);
  ApplyResolutions(outcomes, resolutions);
  ojson j = OutcomesToJson(outcomes);
  if (j["needs_discussion"].get<int>() == 0) {
    const Fragment gold = BuildGold(bundle, outcomes);
    j["gold"] = FragmentToJson(gold);
    if (entry != nullptr) {
      std::unique_lock lock(*entry->mutex);
      Bundle current = ReadBundleFile(entry->path);
      if (!(current == bundle)) {
        return Error(409, "fragment changed while resolving; retry");
      }
      current.gold = gold;
      WriteBundleFile(entry->path, current);
      j["stored"] = true;
    }
  }
  return Json(200, j);
}

HttpResponse AnnotationService::Stats(const HttpRequest &request) {
  const std::string rounding = Query(request, "rounding", "nearest");
  if (rounding != "nearest" && rounding != "floor") {
    return Error(400, "rounding must be nearest or floor");
  }
  std::vector<Fragment> gold;
  for (const auto &[id, entry] : fragments_) {
    const Bundle b = ReadLocked(entry);
    if (b.gold) gold.push_back(*b.gold);
  }
  return Json(200, StatsToJson(CorpusStats(
                       gold, rounding == "floor" ? PercentRounding::kFloor
                                                 : PercentRounding::kNearest)));
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(AnnotationService &service)
    : impl_(std::make_unique<Impl>()) {
  auto handler = [&service](const httplib::Request &req,
                            httplib::Response &res) {
    HttpRequest r;
    r.method = req.method;
    r.path = req.path;
    r.body = req.body;
    for (const auto &[k, v] : req.headers) {
      std::string key = k;
      for (char &c : key) c = static_cast<char>(std::tolower(c));
      r.headers[key] = v;
    }
    for (const auto &[k, v] : req.params) r.query[k] = v;
    const HttpResponse out = service.Handle(r);
    res.status = out.status;
    for (const auto &[k, v] : out.headers) {
      if (k != "Content-Type") res.set_header(k, v);
    }
    auto type = out.headers.find("Content-Type");
    res.set_content(out.body, type == out.headers.end()
                                  ? std::string("text/plain")
                                  : type->second);
  };
  const std::string any = R"(/.*)";
  impl_->server.Get(any, handler);
  impl_->server.Put(any, handler);
  impl_->server.Post(any, handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::Bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Listen() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace labov
