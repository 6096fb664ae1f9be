#include "atomic/config.hpp"
#include "atomic/errors.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace atomic;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json adder_config() {
    return ordered_json::parse(R"({
      "topology": "Serial",
      "algorithm": "adder.txt",
      "memristors": ["a", "b", "c", "w1", "s", "cout"],
      "inputs": ["a", "b", "c"],
      "work": ["w1"],
      "outputs": ["s", "cout"],
      "switches": ["sa", "sb", "sc", "sw1", "ss", "scout"],
      "steps": 12,
      "output_states": {"s": [0,1,1,0,1,0,0,1], "cout": [0,0,0,1,0,1,1,1]}
    })");
}

ErrorKind kind_of(const json& doc) {
    try {
        parse_config(doc.dump());
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected rejection: " << doc.dump();
    return ErrorKind::IoError;
}

}  // namespace

TEST(ParseConfig, TemplateWithThreeInputs) {
    const auto cfg = parse_config(adder_config().dump());
    EXPECT_EQ(cfg.combination_count(), 8u);
    EXPECT_EQ(cfg.topology_name, "Serial");
    EXPECT_EQ(cfg.steps, 12u);
    ASSERT_EQ(cfg.output_states.size(), 2u);
    EXPECT_EQ(cfg.output_states[0].first, "s");
    EXPECT_EQ(cfg.expected("cout"), (BitVector{0, 0, 0, 1, 0, 1, 1, 1}));
    EXPECT_EQ(cfg.index_of("w1"), 3u);
    EXPECT_FALSE(cfg.index_of("zz"));
}

TEST(ParseConfig, OutputVectorLength) {
    auto doc = adder_config();
    doc["inputs"] = {"a", "b"};
    doc["work"] = {"c", "w1"};
    EXPECT_EQ(kind_of(doc), ErrorKind::BadOutputVectorLength);
}

TEST(ParseConfig, OutputStateNotListedAsOutput) {
    auto doc = adder_config();
    doc["outputs"] = {"cout"};
    EXPECT_EQ(kind_of(doc), ErrorKind::RoleReferencesUndeclaredMemristor);
}

TEST(ParseConfig, RolesMustBeDeclared) {
    auto doc = adder_config();
    doc["work"] = {"w9"};
    EXPECT_EQ(kind_of(doc), ErrorKind::RoleReferencesUndeclaredMemristor);
    doc = adder_config();
    doc["work"] = {"a"};
    EXPECT_EQ(kind_of(doc), ErrorKind::RoleReferencesUndeclaredMemristor);
}

TEST(ParseConfig, OutputsMayOverlapOtherRoles) {
    auto doc = adder_config();
    doc["outputs"] = {"s", "cout", "a", "w1"};
    EXPECT_NO_THROW(parse_config(doc.dump()));
}

TEST(ParseConfig, KeySet) {
    auto doc = adder_config();
    doc.erase("steps");
    EXPECT_EQ(kind_of(doc), ErrorKind::MissingKey);
    doc = adder_config();
    doc["colour"] = "blue";
    EXPECT_EQ(kind_of(doc), ErrorKind::UnknownKey);
}

TEST(ParseConfig, TopologyName) {
    auto doc = adder_config();
    doc["topology"] = "Crossbar";
    EXPECT_EQ(kind_of(doc), ErrorKind::UnknownTopologyName);
}

TEST(ParseConfig, MalformedJson) {
    EXPECT_THROW(
        {
            try {
                parse_config("{\"topology\": ");
            } catch (const Error& e) {
                EXPECT_EQ(e.kind(), ErrorKind::MalformedJson);
                throw;
            }
        },
        Error);
}

TEST(ParseConfig, BitsMustBeBinary) {
    auto doc = adder_config();
    doc["output_states"]["s"][0] = 2;
    EXPECT_EQ(kind_of(doc), ErrorKind::MalformedJson);
}

TEST(ParseConfig, BundledConfigsParse) {
    for (const auto& name : fixture::kAllAlgorithms) {
        const auto cfg = parse_config(read_text_file(fixture::kAlgorithms / (name + ".json")));
        EXPECT_EQ(cfg.combination_count(), 8u) << name;
    }
}
