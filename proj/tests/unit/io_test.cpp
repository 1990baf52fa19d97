// Copyright 2026 The bccf Authors
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

#include <gtest/gtest.h>

#include <sstream>

#include "bccf/errors.hpp"
#include "bccf/io.hpp"

namespace bccf {
namespace {

std::string error_of(const std::string& text, std::optional<std::size_t> dim = std::nullopt) {
  std::istringstream in(text);
  try {
    read_corpus(in, dim);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.125, 0.0}) {
    const auto s = format_double(x);
    EXPECT_EQ(std::stod(s), x) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(3.0), "3");
}

TEST(ReadCorpus, BareTableWithHeaderAndLabels) {
  std::istringstream in("f0,f1,label\n1,0,7\n0,1,8\n\n0.5,0.5,7\n");
  const auto c = read_corpus(in);
  EXPECT_FALSE(c.detection_stream);
  EXPECT_EQ(c.dimension, 2u);
  ASSERT_EQ(c.rows.size(), 3u);
  EXPECT_EQ(c.rows[0].group, 7);
  EXPECT_EQ(c.rows[2].vector, (FeatureVector{0.5, 0.5}));
  EXPECT_EQ(c.rows[2].line, 5u);
}

TEST(ReadCorpus, BareTableWithoutHeader) {
  std::istringstream in("1,2,3\n4,5,6\n");
  const auto c = read_corpus(in);
  EXPECT_EQ(c.dimension, 3u);
  EXPECT_FALSE(c.rows[0].group.has_value());
  std::istringstream labeled("1,2,3\n4,5,6\n");
  const auto l = read_corpus(labeled, 2);
  EXPECT_EQ(l.dimension, 2u);
  EXPECT_EQ(l.rows[1].group, 6);
}

TEST(ReadCorpus, EmptyInput) {
  std::istringstream in("");
  const auto c = read_corpus(in);
  EXPECT_TRUE(c.rows.empty());
  EXPECT_EQ(c.dimension, 0u);
}

TEST(ReadCorpus, NanRejectedAtItsLine) {
  EXPECT_NE(error_of("f0,f1\n1,2\n3,nan\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("1,2\ninf,2\n").find("line 2"), std::string::npos);
}

TEST(ReadCorpus, MalformedRows) {
  EXPECT_NE(error_of("f0,f1\n1,2\n3\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("f0,f1\n1,x\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("f0,f1,label\n1,2,abc\n").find("line 2"), std::string::npos);
}

TEST(ReadCorpus, DimensionMismatch) {
  EXPECT_NE(error_of("f0,f1\n1,2\n", 3).find("dimension mismatch"), std::string::npos);
}

TEST(Detections, RoundTrip) {
  std::vector<Detection> ds(2);
  ds[0] = {1, 0, BBox{10.5, 20.25, 0.5, 100.0}, FeatureVector{0.1, 0.2, 0.3}, 4};
  ds[1] = {2, 1, BBox{11.0, 21.0, 0.45, 99.0}, FeatureVector{1.0 / 3.0, 0.0, -1.0}, -1};
  std::stringstream ss;
  write_detections(ss, ds);
  EXPECT_EQ(ss.str().substr(0, 34), "frame,camera,u,v,gamma,h,truth_id,");
  const auto back = read_detections(ss, 3);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].feature, ds[1].feature);
  EXPECT_EQ(back[0].box, ds[0].box);
  EXPECT_EQ(back[1].truth_id, -1);
}

TEST(Detections, AsCorpusUsesTruthAsGroup) {
  std::istringstream in("frame,camera,u,v,gamma,h,truth_id,f0,f1\n1,0,1,1,0.5,10,3,1,0\n1,0,5,5,0.5,10,-1,0,1\n");
  const auto c = read_corpus(in);
  EXPECT_TRUE(c.detection_stream);
  EXPECT_EQ(c.dimension, 2u);
  EXPECT_EQ(c.rows[0].group, 3);
  EXPECT_FALSE(c.rows[1].group.has_value());
  EXPECT_EQ(c.rows[1].line, 3u);
}

TEST(Detections, BadBoxRejected) {
  std::istringstream in("frame,camera,u,v,gamma,h,truth_id,f0\n1,0,1,1,0.5,-10,3,1\n");
  EXPECT_THROW(read_detections(in), InputError);
}

TEST(KeyValues, ParsesAndJoins) {
  std::istringstream in("# comment\nbeta = 0.3\n\nreentry=0:10:30\nreentry=1:40:90  # second\n");
  const auto kv = read_key_values(in);
  EXPECT_EQ(kv.at("beta"), "0.3");
  EXPECT_EQ(kv.at("reentry"), "0:10:30;1:40:90");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(read_key_values(bad), InputError);
}

TEST(KeyValues, IndexConfigKeys) {
  const KeyValues kv{{"dimension", "64"}, {"metric", "euclidean"}, {"beta", "0.25"},
                     {"zeta", "0.7"}, {"c_max", "100"}, {"other", "x"}};
  const auto cfg = apply_index_config(IndexConfig{}, kv);
  EXPECT_EQ(cfg.dimension, 64u);
  EXPECT_EQ(cfg.metric, MetricKind::kEuclidean);
  EXPECT_EQ(cfg.beta, 0.25);
  EXPECT_EQ(cfg.zeta, 0.7);
  EXPECT_EQ(cfg.c_max, 100u);
  EXPECT_THROW(apply_index_config(IndexConfig{}, {{"beta", "abc"}}), InputError);
  EXPECT_THROW(apply_index_config(IndexConfig{}, {{"metric", "l1"}}), InputError);
}

TEST(KeyValues, SceneKeys) {
  const KeyValues kv{{"objects", "4"}, {"frames", "90"}, {"noise", "0.02"}, {"reentry", "0:10:30;2:40:70"}};
  const auto s = apply_scene_spec(SceneSpec{}, kv);
  EXPECT_EQ(s.objects, 4);
  EXPECT_EQ(s.frames, 90);
  EXPECT_EQ(s.noise, 0.02);
  ASSERT_EQ(s.schedule.size(), 2u);
  EXPECT_EQ(s.schedule[1].object, 2);
  EXPECT_EQ(s.schedule[1].return_frame, 70);
  EXPECT_THROW(apply_scene_spec(SceneSpec{}, {{"reentry", "1:2"}}), InputError);
}

TEST(MotCsv, HeaderAndRow) {
  std::ostringstream os;
  write_mot_header(os);
  os << '\n';
  MotReport r;
  r.id_sw = 2;
  r.mota = 0.75;
  write_mot_row(os, r);
  EXPECT_EQ(os.str(), "id_sw,frag,fp,fn,gt,matches,truth_ids,mt,ml,mota,motp\n2,0,0,0,0,0,0,0,0,0.75,0");
}

}  // namespace
}  // namespace bccf
