#pragma once

#include <string>

#include <json.hpp>

#include "kanlim/derived/derived.hpp"
#include "kanlim/franke/franke.hpp"

namespace kanlim::io {

/// Insertion-ordered, so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

/// Scalars are [numerator, denominator]; parts beyond 64 bits are strings.
Json to_json(const PScalar& x);
PScalar scalar_from_json(const Json& j);

/// {"rank": r, "torsion": [e1, ...]}
Json to_json(const FpModule& m);
FpModule module_from_json(const Json& j, int p);

/// {"entries": [[num, den], ...]} in row-major order.
Json to_json(const ModuleMap& f);
ModuleMap map_from_json(const Json& j, const FpModule& source, const FpModule& target);

/// {"p", "N", "modules": [...], "differentials": [...]}; d^n goes from
/// modules[n] to modules[n+1 mod N].
Json to_json(const CyclicComplex& c);
CyclicComplex complex_from_json(const Json& j);

/// {"elements": [names], "hasse": [[lower, upper], ...]} by name.
Json to_json(const FinPoset& p);
FinPoset poset_from_json(const Json& j);

/// {"p", "N", "poset", "vertices": [complexes], "edges": [{"from", "to",
/// "components": [maps per degree]}]} with one entry per Hasse edge.
Json to_json(const CxDiagram& x);
CxDiagram diagram_from_json(const Json& j);

/// {"target": poset, "images": [target names, in source order]}.
PosetMap poset_map_from_json(const Json& j, const FinPoset& source);

/// {"r", "cells": [{"s", "t", "module"}]} in (s, t) order.
Json to_json(const SseqPage& page);
Json to_json(const SpectralSequence& ss, const FinPoset& target);

Json to_json(const std::vector<FpModule>& table);
Json to_json(const ReportCheck& check);
Json to_json(const PipelineReport& report);
Json to_json(const RoundTrip& rt, const CyclicComplex& input);

/// Reads a whole file; throws InvalidInput on I/O or syntax errors.
Json read_json_file(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace kanlim::io
