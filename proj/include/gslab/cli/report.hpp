#pragma once

#include "gslab/assumptions.hpp"
#include "gslab/cli/config.hpp"
#include "gslab/pohozaev.hpp"
#include "gslab/spectrum.hpp"
#include "gslab/stability.hpp"

namespace gslab::cli {

// Finite values as numbers, others as the strings "inf", "-inf", "nan".
Json num(double x);

Json to_json(const Params& p);
Json to_json(const StabilityRecord& r);
Json to_json(const SpectrumReport& r, bool with_vectors = false);
Json to_json(const Verdict& v);
Json to_json(const IdentityReport& r);
Json to_json(const ConditionReport& r);
Json to_json(const SweepResult& r);

// {"schema", "command", "config", "result"}.
Json envelope(const RunConfig& config, Json result);

}  // namespace gslab::cli
