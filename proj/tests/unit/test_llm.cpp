#include <doctest.h>

#include <fstream>

#include "fixtures.hpp"
#include "logicl/errors.hpp"
#include "logicl/llm.hpp"
#include "logicl/replay.hpp"

using namespace logicl;

namespace {

CompletionRequest request_for(std::string prompt) {
  CompletionRequest request;
  request.prompt = std::move(prompt);
  request.max_tokens = 32;
  request.model_id = "mock";
  return request;
}

}  // namespace

TEST_SUITE("llm") {

TEST_CASE("the mock answers with the last example's wrapped label") {
  MockNearestTemplateBackend backend;
  const std::string prompt =
      "instruction\n"
      "Log: a b 1\nTemplate: <START> a b <*> <END>\n"
      "Log: a b 9\nTemplate: <START> a b <*> <END>\n"
      "Log: a b 3\nTemplate:";
  CHECK(backend.complete(request_for(prompt)) == "<START> a b <*> <END>\nDone.");
}

TEST_CASE("the mock goes quiet without example blocks") {
  MockNearestTemplateBackend backend;
  CHECK(backend.complete(request_for("instruction\nLog: a b 3\nTemplate:")).empty());

  // And an empty completion fails extraction downstream.
  CHECK_FALSE(extract_template("", PromptConfig::defaults()).has_value());
}

TEST_CASE("request digests react to every request field") {
  CompletionRequest base = request_for("prompt text");
  const std::string digest = ReplayStore::request_digest(base);

  CompletionRequest changed = base;
  changed.prompt = "different prompt";
  CHECK(ReplayStore::request_digest(changed) != digest);

  changed = base;
  changed.max_tokens = 33;
  CHECK(ReplayStore::request_digest(changed) != digest);

  changed = base;
  changed.temperature = 0.5;
  CHECK(ReplayStore::request_digest(changed) != digest);

  changed = base;
  changed.stop = {"<END>"};
  CHECK(ReplayStore::request_digest(changed) != digest);

  changed = base;
  changed.model_id = "other";
  CHECK(ReplayStore::request_digest(changed) != digest);

  CHECK(ReplayStore::request_digest(base) == digest);
}

TEST_CASE("recorded sessions replay bit for bit") {
  testing::TempDir dir("replay");
  const auto file = dir / "session.jsonl";
  const std::string prompt =
      "x\nLog: a 1\nTemplate: <START> a <*> <END>\nLog: a 2\nTemplate:";

  std::string recorded;
  {
    auto store = std::make_shared<ReplayStore>(file);
    ReplayBackend backend(store, std::make_shared<MockNearestTemplateBackend>(),
                          ReplayMode::record);
    recorded = backend.complete(request_for(prompt));
    CHECK(store->size() == 1);
    // A repeated request is served from the store, not re-recorded.
    CHECK(backend.complete(request_for(prompt)) == recorded);
    CHECK(store->size() == 1);
  }
  {
    auto store = std::make_shared<ReplayStore>(file);
    ReplayBackend offline(store, nullptr, ReplayMode::replay);
    CHECK(offline.complete(request_for(prompt)) == recorded);
  }
}

TEST_CASE("replay misses are a hard error offline") {
  testing::TempDir dir("replay-miss");
  auto store = std::make_shared<ReplayStore>(dir / "session.jsonl");
  ReplayBackend offline(store, nullptr, ReplayMode::replay);
  try {
    offline.complete(request_for("never recorded"));
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::backend_unavailable);
  }
}

TEST_CASE("record mode needs a backend to record from") {
  testing::TempDir dir("replay-cfg");
  auto store = std::make_shared<ReplayStore>(dir / "session.jsonl");
  try {
    ReplayBackend backend(store, nullptr, ReplayMode::record);
    FAIL("expected an error");
  } catch (const Error& error) {
    CHECK(error.code() == Errc::config_error);
  }
}

TEST_CASE("a truncated trailing record does not poison the store") {
  testing::TempDir dir("replay-trunc");
  const auto file = dir / "session.jsonl";
  {
    auto store = std::make_shared<ReplayStore>(file);
    store->append("digest-1", "mock", "response-1");
  }
  {
    std::ofstream out(file, std::ios::app | std::ios::binary);
    out << R"({"key":"digest-2","model":"mock","resp)";  // interrupted mid-record
  }
  ReplayStore reloaded(file);
  CHECK(reloaded.size() == 1);
  CHECK(reloaded.find("digest-1").value() == "response-1");
  CHECK_FALSE(reloaded.find("digest-2").has_value());
}

}  // TEST_SUITE
