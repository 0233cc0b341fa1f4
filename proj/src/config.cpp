#include "skl/config.hpp"

#include "skl/errors.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace skl {

std::string divisor_grammar() {
    return "divisor grammar: entries separated by ';', each either "
           "'base:<inflection 0-8>,offset:<m>,sigma:<k>' (the point inflection + m*r "
           "shifted k translation steps) or 'orbit-of:<entry index>,sigma:<k>'; an empty "
           "string is the empty divisor";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& s, const std::string& what, bool cite_grammar = false) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        std::string msg = "bad integer '" + s + "' for " + what;
        if (cite_grammar) msg += "; " + divisor_grammar();
        throw UsageError(msg);
    }
}

} // namespace

std::vector<DivisorEntrySpec> parse_divisor_spec(const std::string& text) {
    std::vector<DivisorEntrySpec> out;
    std::stringstream entries(text);
    std::string entry;
    while (std::getline(entries, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        DivisorEntrySpec spec;
        bool has_base = false;
        std::stringstream fields(entry);
        std::string field;
        while (std::getline(fields, field, ',')) {
            field = trim(field);
            std::size_t colon = field.find(':');
            if (colon == std::string::npos)
                throw UsageError("divisor entry field '" + field + "' has no ':'; " +
                                 divisor_grammar());
            std::string key = trim(field.substr(0, colon));
            std::string val = trim(field.substr(colon + 1));
            if (key == "base") {
                spec.orbit_ref = false;
                spec.base = static_cast<int>(parse_int(val, "base", true));
                has_base = true;
            } else if (key == "orbit-of") {
                spec.orbit_ref = true;
                spec.base = static_cast<int>(parse_int(val, "orbit-of", true));
                has_base = true;
            } else if (key == "offset") {
                spec.offset = parse_int(val, "offset", true);
            } else if (key == "sigma") {
                spec.sigma = parse_int(val, "sigma", true);
            } else {
                throw UsageError("unknown divisor field '" + key + "'; " + divisor_grammar());
            }
        }
        if (!has_base)
            throw UsageError("divisor entry '" + entry + "' needs base: or orbit-of:; " +
                             divisor_grammar());
        if (!spec.orbit_ref && (spec.base < 0 || spec.base > 8))
            throw UsageError("inflection index must be 0..8; " + divisor_grammar());
        if (spec.orbit_ref &&
            (spec.base < 0 || spec.base >= static_cast<int>(out.size())))
            throw UsageError("orbit-of must reference an earlier entry; " + divisor_grammar());
        if (spec.orbit_ref && spec.offset != 0)
            throw UsageError("orbit-of entries take only sigma:, not offset:; " +
                             divisor_grammar());
        out.push_back(spec);
    }
    return out;
}

Divisor materialize_divisor(const CurveContext& ctx, const std::vector<DivisorEntrySpec>& spec) {
    Divisor d;
    for (const auto& e : spec) {
        ProjPoint p;
        if (e.orbit_ref) {
            p = d.entries[static_cast<std::size_t>(e.base)].first;
        } else {
            p = ctx.add(ctx.inflections()[static_cast<std::size_t>(e.base)],
                        ctx.mul_int(e.offset, ctx.translation()));
        }
        d.entries.push_back({ctx.sigma(p, e.sigma), 1});
    }
    return d;
}

void apply_config_value(Config& cfg, const std::string& key, const std::string& value) {
    auto as_int = [&](long long lo, long long hi) {
        long long v = parse_int(value, key);
        if (v < lo || v > hi)
            throw UsageError(key + " must lie in [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "], got " + value);
        return v;
    };
    if (key == "prime") {
        cfg.prime = static_cast<std::uint32_t>(as_int(2, 0x7fffffff));
    } else if (key == "params") {
        if (value == "random") {
            cfg.params.reset();
            return;
        }
        std::array<PrimeField::Elt, 3> abc{};
        std::stringstream ss(value);
        std::string part;
        int i = 0;
        while (std::getline(ss, part, ',')) {
            if (i >= 3) throw UsageError("params wants exactly three integers a,b,c");
            long long v = parse_int(trim(part), "params");
            if (v < 0) throw UsageError("params must be nonnegative integers");
            abc[static_cast<std::size_t>(i++)] = static_cast<PrimeField::Elt>(v);
        }
        if (i != 3) throw UsageError("params wants exactly three integers a,b,c");
        cfg.params = abc;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "cap") {
        cfg.cap = static_cast<int>(as_int(0, 1000));
    } else if (key == "order-threshold" || key == "order_threshold") {
        cfg.order_threshold = static_cast<int>(as_int(-1000000, 1000000));
    } else if (key == "retries") {
        cfg.retries = static_cast<int>(as_int(0, 10000));
    } else if (key == "suite") {
        cfg.suite = value;
    } else if (key == "divisor") {
        cfg.divisor = value;
    } else if (key == "nmax") {
        cfg.nmax = static_cast<int>(as_int(1, 4));
    } else if (key == "format") {
        cfg.format = value;
    } else if (key == "out") {
        cfg.out = value;
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    Config cfg;

    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw UsageError("config file " + path + " is not valid JSON: " + e.what());
        }
        for (auto& [key, val] : j.items()) {
            std::string s;
            if (val.is_string())
                s = val.get<std::string>();
            else if (val.is_number_integer())
                s = std::to_string(val.get<long long>());
            else if (val.is_array()) {
                for (std::size_t i = 0; i < val.size(); ++i)
                    s += (i ? "," : "") + std::to_string(val[i].get<long long>());
            } else
                throw UsageError("config key '" + key + "' has an unsupported JSON type");
            apply_config_value(cfg, key, s);
        }
        return cfg;
    }

    std::stringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

void validate_config(const Config& cfg) {
    if (cfg.cap > 12) throw UsageError("degree cap is limited to 12");
    if (cfg.cap < 4) throw UsageError("degree cap must be at least 4");
    if (cfg.order_threshold < 1) throw UsageError("order threshold must be at least 1");
    if (cfg.nmax < 1) throw UsageError("nmax must be at least 1");
    if (cfg.format != "json" && cfg.format != "md" && cfg.format != "csv")
        throw UsageError("format must be json, md, or csv");
    PrimeField f(cfg.prime); // rejects composite or unusable moduli
    if (cfg.params) {
        for (auto v : *cfg.params)
            if (f.is_zero(static_cast<PrimeField::Elt>(v % cfg.prime)))
                throw UsageError("params must be nonzero modulo the prime");
    }
}

DeriveOptions derive_options(const Config& cfg) {
    validate_config(cfg);
    DeriveOptions opt;
    opt.prime = cfg.prime;
    if (cfg.params) {
        std::array<PrimeField::Elt, 3> abc = *cfg.params;
        for (auto& v : abc) v = v % cfg.prime;
        opt.params = abc;
    }
    opt.seed = cfg.seed;
    opt.cap = cfg.cap;
    opt.order_threshold = cfg.order_threshold;
    opt.retries = cfg.retries;
    return opt;
}

} // namespace skl
