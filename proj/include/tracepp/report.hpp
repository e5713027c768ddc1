/**************************************************************************
 * report.hpp
 *
 * Copyright 2026 The tracepp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// JSON Lines and CSV serialisation of campaign results. Field order is fixed; JSON objects
// keep insertion order so that a stream is reproducible byte for byte.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "campaign.hpp"

namespace tracepp {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "report_v1";

inline Json mode_json(const SweepMode& m) {
    if (m.exhaustive)
        return Json{{"kind", "exhaustive"}};
    return Json{{"kind", "sampled"}, {"n", m.samples}, {"seed", m.seed}};
}

inline Json params_json(const std::vector<std::pair<std::string, std::string>>& params) {
    Json j = Json::object();
    for (const auto& [k, v] : params)
        j[k] = v;
    return j;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
    return v ? Json(*v) : Json(nullptr);
}

inline Json to_json(const VerificationReport& r) {
    Json j;
    j["schema"] = report_schema;
    j["family_id"] = r.family_id;
    j["variant"] = r.variant;
    j["family"] = r.family;
    j["m"] = r.m;
    j["base_modulus"] = r.base_modulus;
    j["cubic"] = r.cubic;
    j["params"] = params_json(r.params);
    j["claimed"] = r.claimed();
    j["predicate"] = optional_json(r.predicate);
    j["oracle"] = r.oracle;
    j["agree"] = optional_json(r.agree());
    j["counterexample"] =
        r.counterexample ? Json::array({r.counterexample->first, r.counterexample->second}) : Json(nullptr);
    j["mode"] = mode_json(r.mode);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline Json to_json(const IdentityReport& r) {
    Json j;
    j["schema"] = "identity_v1";
    j["m"] = r.m;
    j["base_modulus"] = r.base_modulus;
    j["cubic"] = r.cubic;
    j["identity"] = r.identity;
    j["holds"] = r.result.holds;
    j["checked"] = r.result.checked;
    j["first_failure"] = r.result.first_failure ? Json(to_hex(*r.result.first_failure)) : Json(nullptr);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline Json to_json(const EquivReport& r) {
    Json j;
    j["schema"] = "equiv_v1";
    j["m"] = r.m;
    j["kind"] = r.kind;
    j["trial"] = r.trial;
    j["f"] = r.f;
    j["g"] = r.g;
    j["params"] = params_json(r.params);
    j["pp_f"] = r.pp_f;
    j["pp_g"] = r.pp_g;
    j["agree"] = r.agree();
    return j;
}

inline Json to_json(const FieldSetup& fs) {
    const CubicExt& E = fs.ext;
    Json j;
    j["schema"] = "field_v1";
    j["m"] = fs.field.m();
    j["q"] = fs.field.q();
    j["base_modulus"] = fs.modulus_hex();
    j["cubic"] = fs.cubic_hex();
    j["log_tables"] = fs.field.uses_tables();
    j["t_q"] = to_string(E.frobenius_of_t());
    j["t2_q"] = to_string(E.frobenius_of_t2());
    return j;
}

inline Json to_json(const FieldSetup& fs, const TraceZeroBasis& b) {
    const CubicExt& E = fs.ext;
    Json j;
    j["schema"] = "basis_v1";
    j["m"] = fs.field.m();
    j["base_modulus"] = fs.modulus_hex();
    j["cubic"] = fs.cubic_hex();
    j["theta"] = to_string(b.theta);
    j["theta_index"] = to_hex(E.pack(b.theta));
    j["c"] = to_hex(b.c);
    j["alpha"] = to_string(b.alpha);
    j["alpha_index"] = to_hex(E.pack(b.alpha));
    j["trace_alpha"] = to_hex(E.trace(b.alpha));
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 3; ++c)
            row.push_back(to_hex(b.to_xyz.a[3 * r + c]));
        rows.push_back(row);
    }
    j["to_xyz"] = rows;
    return j;
}

/// CSV with the JSON fields flattened: params as "k=v;k=v", the witness as "i;j".
inline std::string csv_header() {
    return "schema,family_id,variant,family,m,base_modulus,cubic,params,claimed,predicate,oracle,agree,"
           "counterexample,mode,samples,seed,elapsed_ms";
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string to_csv(const VerificationReport& r) {
    auto tri = [](const std::optional<bool>& b) { return b ? std::string(*b ? "true" : "false") : std::string(); };
    std::string params;
    for (const auto& [k, v] : r.params)
        params += (params.empty() ? "" : ";") + k + "=" + v;
    std::string row;
    row += std::string(report_schema) + ",";
    row += csv_quote(r.family_id) + "," + csv_quote(r.variant) + "," + csv_quote(r.family) + ",";
    row += std::to_string(r.m) + "," + r.base_modulus + "," + r.cubic + "," + params + ",";
    row += std::string(r.claimed() ? "true" : "false") + "," + tri(r.predicate) + ",";
    row += std::string(r.oracle ? "true" : "false") + "," + tri(r.agree()) + ",";
    row += (r.counterexample ? r.counterexample->first + ";" + r.counterexample->second : "") + ",";
    row += r.mode.exhaustive ? "exhaustive,," : "sampled," + std::to_string(r.mode.samples) + "," +
                                                    std::to_string(r.mode.seed);
    row += "," + std::to_string(r.elapsed_ms);
    return row;
}

} // namespace tracepp
