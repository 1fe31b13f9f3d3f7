#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "decode_oracle.hpp"
#include "m2c/model.hpp"

using namespace m2c;

TEST_CASE("serialize deserialize serialize is byte identical") {
  std::mt19937 rng(8080);
  for (int round = 0; round < 10; ++round) {
    TranslationModel model = m2c_test::random_tiny_model(rng);
    model.name_counts = {{"getBitmap", 3}, {"println", 5}};
    std::string once = serialize_model(model);
    std::string twice = serialize_model(deserialize_model(once));
    REQUIRE(once == twice);
  }
}

TEST_CASE("model files carry header sections and checksum") {
  TranslationModel model;
  model.table.entries["a"].push_back({"x", 1, 1.0, 1.0});
  model.lm.add_sentence({"x"});
  model.source_vocab = {"a"};
  model.target_vocab = {"x"};
  std::string text = serialize_model(model);
  CHECK(text.starts_with("M2C-MODEL v1\n"));
  for (const char* section : {"[WEIGHTS]", "[VOCAB-SRC]", "[VOCAB-TGT]", "[PHRASES]",
                              "[LM]", "[NAMES]", "[CHECKSUM]"})
    CHECK(text.find(std::string(section) + "\n") != std::string::npos);
  CHECK(text.find("a ||| x ||| 1 1 1\n") != std::string::npos);
}

TEST_CASE("truncated files are corrupt") {
  std::mt19937 rng(99);
  std::string text = serialize_model(m2c_test::random_tiny_model(rng));
  std::string truncated = text.substr(0, text.size() / 2);
  try {
    deserialize_model(truncated);
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(e.code() == ModelError::CorruptModel);
  }
}

TEST_CASE("bit flips are corrupt") {
  std::mt19937 rng(98);
  std::string text = serialize_model(m2c_test::random_tiny_model(rng));
  std::size_t pos = text.find("t0");
  REQUIRE(pos != std::string::npos);
  text[pos] = 'u';
  try {
    deserialize_model(text);
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(e.code() == ModelError::CorruptModel);
  }
}

TEST_CASE("future versions are refused as unsupported") {
  std::mt19937 rng(97);
  TranslationModel model = m2c_test::random_tiny_model(rng);
  model.format_version = 2;
  std::string text = serialize_model(model);
  try {
    deserialize_model(text);
    FAIL("expected ModelError");
  } catch (const ModelError& e) {
    CHECK(e.code() == ModelError::UnsupportedVersion);
  }
}

TEST_CASE("save and load round-trip through the filesystem") {
  std::mt19937 rng(96);
  TranslationModel model = m2c_test::random_tiny_model(rng);
  std::string path = "m2c_model_io_test.model";
  save_model(model, path);
  TranslationModel re = load_model(path);
  CHECK(serialize_model(model) == serialize_model(re));
  std::remove(path.c_str());
}
