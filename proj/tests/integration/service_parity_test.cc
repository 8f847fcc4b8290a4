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

// The service and the command line must produce the same JSON documents.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.h"
#include "labov/service.h"
#include "support/fixtures.h"
#include "support/synth.h"

namespace labov {
namespace {

namespace fs = std::filesystem;

class ParityTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ::unsetenv("LABOV_CONFIG");
    dir_ = fs::temp_directory_path() /
           ("labov_parity_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 4; ++i) {
      Bundle b = synth::RandomVotingBundle(rng, 3);
      b.meta.fragment_id = "voting-" + std::to_string(i);
      for (auto &l : b.layers) l.fragment_id = b.meta.fragment_id;
      if (i % 2 == 0) {
        b.gold = LayerToFragment(b, b.layers[0]);
      }
      const fs::path p = dir_ / (b.meta.fragment_id + ".json");
      WriteBundleFile(p, b);
      paths_.push_back(p.string());
    }
    ServiceConfig config;
    config.data_dir = dir_;
    service_ = std::make_unique<AnnotationService>(config);
  }
  void TearDown() override {
    service_.reset();
    fs::remove_all(dir_);
  }

  std::string CliJson(std::vector<std::string> args) {
    std::ostringstream out, err;
    args.insert(args.begin(), {"--format", "json"});
    RunCli(args, out, err);
    return out.str();
  }

  std::string Post(const std::string &path, const std::string &body,
                   std::map<std::string, std::string> query = {}) {
    HttpResponse r = service_->Handle({"POST", path, body, {}, std::move(query)});
    return r.body;
  }

  std::string FileText(const std::string &path) {
    return service_->Handle({"GET", "/fragments/" + fs::path(path).stem().string(),
                             "", {}, {}})
        .body;
  }

  fs::path dir_;
  std::vector<std::string> paths_;
  std::unique_ptr<AnnotationService> service_;
};

TEST_F(ParityTest, Lint) {
  for (const auto &p : paths_) {
    EXPECT_EQ(Post("/lint", FileText(p)), CliJson({"lint", p})) << p;
  }
  const std::string table1 = fixtures::DataPath("table1.lat.tsv");
  std::ostringstream lat;
  lat << std::ifstream(table1).rdbuf();
  EXPECT_EQ(Post("/lint", lat.str()), CliJson({"lint", table1}));
}

TEST_F(ParityTest, LabelMetrics) {
  for (const auto &p : paths_) {
    EXPECT_EQ(Post("/metrics/labels", FileText(p)), CliJson({"agree-labels", p}));
    EXPECT_EQ(Post("/metrics/labels", FileText(p), {{"denominator", "majority"}}),
              CliJson({"agree-labels", "--denominator", "majority", p}));
  }
}

TEST_F(ParityTest, SegmentationMetrics) {
  std::string all = "[";
  for (size_t i = 0; i < paths_.size(); ++i) {
    all += (i ? "," : "") + FileText(paths_[i]);
  }
  all += "]";
  std::vector<std::string> args{"--nt", "3", "agree-seg", "--pooling",
                                "per-fragment"};
  args.insert(args.end(), paths_.begin(), paths_.end());
  EXPECT_EQ(Post("/metrics/segmentation", all,
                 {{"nt", "3"}, {"pooling", "per-fragment"}}),
            CliJson(args));
}

TEST_F(ParityTest, Adjudicate) {
  for (const auto &p : paths_) {
    EXPECT_EQ(Post("/adjudicate", FileText(p)), CliJson({"adjudicate", p}));
  }
}

TEST_F(ParityTest, Stats) {
  for (const char *rounding : {"nearest", "floor"}) {
    EXPECT_EQ(service_->Handle({"GET", "/stats", "", {}, {{"rounding", rounding}}})
                  .body,
              CliJson({"stats", "--rounding", rounding, dir_.string()}));
  }
}

}  // namespace
}  // namespace labov
