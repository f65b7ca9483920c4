#pragma once

#include <string>

#include <json.hpp>

#include "stepex/explain.hpp"

namespace stepex {

// Sequence document, version 1. Constraint references carry id, kind and
// display text inline; literals are rendered through the vocabulary.
// serialize(parse(serialize(x))) is byte-identical to serialize(x).
nlohmann::ordered_json sequence_to_json(const Theory& theory,
                                        const ExplanationSequence& seq,
                                        const EngineOptions& opts,
                                        const std::string& puzzle_name);

struct ParsedSequence {
  std::string puzzle_name;
  EngineOptions opts;
  ExplanationSequence seq;
};

ParsedSequence sequence_from_json(const Theory& theory,
                                  const nlohmann::json& doc);

std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace stepex
