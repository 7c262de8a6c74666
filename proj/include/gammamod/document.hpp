#pragma once

#include "gammamod/conv1d.hpp"
#include "gammamod/interleave.hpp"

#include <string>
#include <variant>

namespace gammamod {

struct WitnessDocument {
  ArrModule source;
  ArrModule target;
  InterleavingWitness witness;
};

using DocumentPayload = std::variant<ConeSpec, ArrModule, GammaModule, RaySheaf, ModMorphism, WitnessDocument>;

struct Document {
  DocumentPayload payload;
  std::string type() const;
};

inline constexpr int kDocumentVersion = 1;

// Schema and number errors throw ParseError (DimensionError for inconsistent
// shapes); non-functorial modules, unnatural morphisms and invalid witnesses
// throw InvariantError.
Document parse_document(const std::string& text);
Document read_document(const std::string& path);
std::string emit_document(const Document& doc);
void write_document(const std::string& path, const Document& doc);

bool documents_equal(const Document& a, const Document& b);

}  // namespace gammamod
