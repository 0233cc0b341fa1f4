#pragma once

#include "skl/bridge.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace skl {

// One divisor entry: either inflection[base] + offset * r shifted by sigma
// steps, or a reference to an earlier entry shifted by sigma steps.
struct DivisorEntrySpec {
    bool orbit_ref = false;
    int base = 0;
    long long offset = 0;
    long long sigma = 0;
};

std::string divisor_grammar();
std::vector<DivisorEntrySpec> parse_divisor_spec(const std::string& text);
Divisor materialize_divisor(const CurveContext& ctx, const std::vector<DivisorEntrySpec>& spec);

struct Config {
    std::uint32_t prime = 1000003;
    std::optional<std::array<PrimeField::Elt, 3>> params; // empty = random
    std::uint64_t seed = 1;
    int cap = 9;
    int order_threshold = 200;
    int retries = 16;
    std::string suite = "all";
    std::string divisor;
    int nmax = 3;
    std::string format = "md";
    std::string out;
};

// key=value lines (# comments) or a JSON object; unknown keys are errors
Config load_config_file(const std::string& path);
void apply_config_value(Config& cfg, const std::string& key, const std::string& value);
void validate_config(const Config& cfg);

DeriveOptions derive_options(const Config& cfg);

} // namespace skl
