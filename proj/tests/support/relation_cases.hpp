#pragma once

#include <array>
#include <string_view>

#include "interlock/relations.hpp"

namespace oracle {

struct ParserCase {
  std::string_view response;
  interlock::RelationStatus status;
  std::string_view label;  // expected taxonomy entry when identified
};

using interlock::RelationStatus;

inline constexpr std::array<ParserCase, 30> kParserCases{{
    // Taxonomy labels.
    {R"({"Relation": "husband - wife"})", RelationStatus::identified, "husband - wife"},
    {R"({"Relation": "nephew - uncle"})", RelationStatus::identified, "nephew - uncle"},
    {R"({"Relation": "Nephew - Uncle"})", RelationStatus::identified, "nephew - uncle"},
    {R"({"Relation": "nephew-uncle"})", RelationStatus::identified, "nephew - uncle"},
    {R"({"Relation": "  friend -   friend "})", RelationStatus::identified, "friend - friend"},
    {R"({"Relation": "sister-in-law - brother-in-law"})", RelationStatus::identified,
     "sister-in-law - brother-in-law"},
    {R"({"Relation": "sister-in-law-brother-in-law"})", RelationStatus::identified,
     "sister-in-law - brother-in-law"},
    {R"(Here you go: {"Relation": "adoptive mother - adopted son"} Hope it helps.)",
     RelationStatus::identified, "adoptive mother - adopted son"},
    {"```json\n{\"Relation\": \"cousin - cousin\"}\n```", RelationStatus::identified,
     "cousin - cousin"},
    {R"({"relation": "mother - son"})", RelationStatus::identified, "mother - son"},
    {"{\"Relation\": \"grandmother \xE2\x80\x93 grandson\"}", RelationStatus::identified,
     "grandmother - grandson"},
    {R"({"Confidence": 0.9, "Relation": "aunt - nephew"})", RelationStatus::identified,
     "aunt - nephew"},
    {R"({not json} then {"Relation": "godmother - godson"})", RelationStatus::identified,
     "godmother - godson"},
    {R"({"Relation": "stepfather - stepdaughter", "note": "a } inside a string"})",
     RelationStatus::identified, "stepfather - stepdaughter"},
    // Not Available.
    {R"({"Relation": "Not Available"})", RelationStatus::not_available, ""},
    {R"({"Relation": "not available"})", RelationStatus::not_available, ""},
    {R"({"Relation": "  NOT AVAILABLE  "})", RelationStatus::not_available, ""},
    {R"(The text does not say. {"Relation": "Not Available"})", RelationStatus::not_available, ""},
    {R"({"Relation": "Not Available", "Reason": "no mention"})", RelationStatus::not_available, ""},
    {"```\n{\"Relation\":\"Not Available\"}\n```", RelationStatus::not_available, ""},
    // Malformed.
    {"no structure at all", RelationStatus::error, ""},
    {"", RelationStatus::error, ""},
    {R"({"Relation": "business partner"})", RelationStatus::error, ""},
    {R"({"Relation": ""})", RelationStatus::error, ""},
    {R"({"Relation": null})", RelationStatus::error, ""},
    {R"({"Relation": ["husband - wife"]})", RelationStatus::error, ""},
    {R"({"Relationship": "husband - wife"})", RelationStatus::error, ""},
    {R"({"Relation": "husband - wife")", RelationStatus::error, ""},
    {R"(["husband - wife"])", RelationStatus::error, ""},
    {R"({"Relation": "wife - husband"})", RelationStatus::error, ""},
}};

}  // namespace oracle
