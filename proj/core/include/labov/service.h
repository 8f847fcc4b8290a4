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

#ifndef LABOV_SERVICE_H_
#define LABOV_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "labov/bundle.h"
#include "labov/lint.h"
#include "labov/seg_agreement.h"
#include "labov/wizard.h"

namespace labov {

struct ServiceConfig {
  std::filesystem::path data_dir;  // one bundle file per fragment
  LintConfig lint = LintConfig::Default();
  MicroChart chart = MicroChart::Default();
  int nt = kDefaultNearMissWindow;
};

// Header names are lower case.
struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
  std::map<std::string, std::string> headers;
  std::map<std::string, std::string> query;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Version token of an annotator's layer: a digest prefix of its serialized
// form, or "absent" when the bundle has no such layer.
std::string LayerVersion(const Bundle &bundle, std::string_view annotator);

// The HTTP API over a directory of bundle files, independent of the
// transport. Handle may be called from several threads; writes to one
// fragment are serialized and guarded by layer version tokens.
class AnnotationService {
 public:
  // Indexes the bundles in config.data_dir. Throws on unreadable bundles or
  // two files with the same fragment id.
  explicit AnnotationService(ServiceConfig config);
  ~AnnotationService();

  HttpResponse Handle(const HttpRequest &request);
  std::vector<std::string> FragmentIds() const;

 private:
  struct Entry {
    std::filesystem::path path;
    std::unique_ptr<std::shared_mutex> mutex;
  };

  HttpResponse ListFragments();
  HttpResponse GetFragment(const std::string &id);
  HttpResponse GetLayer(const std::string &id, const std::string &annotator);
  HttpResponse PutLayer(const std::string &id, const std::string &annotator,
                        const HttpRequest &request);
  HttpResponse Lint(const HttpRequest &request);
  HttpResponse WizardNext(const HttpRequest &request);
  HttpResponse WizardDecide(const HttpRequest &request);
  HttpResponse SegMetrics(const HttpRequest &request);
  HttpResponse LabelMetrics(const HttpRequest &request);
  HttpResponse AdjudicateBundle(const HttpRequest &request);
  HttpResponse Resolve(const HttpRequest &request);
  HttpResponse Stats(const HttpRequest &request);

  Bundle ReadLocked(const Entry &entry) const;

  ServiceConfig config_;
  std::map<std::string, Entry> fragments_;
};

// Serves an AnnotationService over HTTP/1.1.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService &service);
  ~HttpServer();

  // Binds to `port`, or to a free port when port is 0. Returns the bound
  // port, or -1 on failure.
  int Bind(const std::string &host, int port);
  // Serves until Stop; returns false if the server could not run.
  bool Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace labov

#endif  // LABOV_SERVICE_H_
