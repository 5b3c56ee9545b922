#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "atlas.hpp"
#include "certify.hpp"
#include "escape.hpp"
#include "leafjoin.hpp"

namespace spz {

using Json = nlohmann::ordered_json;

// Complex numbers go out as [re, im]; the point at infinity as "infinity".
// Non-finite doubles become strings too, since JSON has no NaN.
inline Json num_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

inline Json cx_json(Cx z) { return Json::array({num_json(z.real()), num_json(z.imag())}); }

inline Json sphere_json(const SpherePoint& p) { return p.inf ? Json("infinity") : cx_json(p.z); }

inline Json to_json(const EscapeVerdict& v, Cx q) {
    Json j;
    j["q"] = cx_json(q);
    j["status"] = to_string(v.status);
    if (v.witness) {
        j["word"] = v.witness->word;
        j["value"] = sphere_json(v.witness->value);
        j["kind"] = to_string(v.witness->kind);
        j["budget_used"] = v.witness->budget_used;
        j["shading_depth"] = v.shading_depth;
    } else {
        j["budget"] = v.budget;
    }
    j["words_tested"] = v.words_tested;
    return j;
}

inline Json to_json(const CertMargins& m) {
    Json j;
    j["origin_in"] = num_json(m.origin_in);
    j["one_minus_q_out"] = num_json(m.one_minus_q_out);
    j["square_in"] = num_json(m.square_in);
    if (std::isfinite(m.image_square_in)) j["image_square_in"] = m.image_square_in;
    j["invariance_error"] = num_json(m.invariance_error);
    j["min_slack"] = num_json(m.min_slack());
    return j;
}

inline Json to_json(const ZeroFreeCertificate& c) {
    Json j;
    j["q"] = cx_json(c.q);
    j["method"] = to_string(c.method);
    j["center"] = cx_json(c.V.center);
    j["radius"] = c.V.radius;
    j["margins"] = to_json(c.margins);
    return j;
}

inline Json not_found_json(Cx q, double best_slack) {
    Json j;
    j["q"] = cx_json(q);
    j["status"] = "not_found";
    j["best_slack"] = num_json(best_slack);
    return j;
}

inline Json to_json(const ActivityPoint& a) {
    Json j;
    j["d1"] = a.d1;
    j["d2"] = a.d2;
    j["theta"] = a.theta;
    j["lambda"] = cx_json(a.lambda);
    j["z_fixed"] = cx_json(a.z_fixed);
    j["multiplier"] = cx_json(a.multiplier);
    j["q"] = cx_json(a.q);
    return j;
}

inline Json to_json(const ZeroHuntRecord& r) {
    Json j;
    j["depth"] = r.depth;
    j["converged"] = r.converged;
    if (r.converged) {
        j["kind"] = to_string(r.kind);
        j["q_zero"] = cx_json(r.q_zero);
        j["residual"] = num_json(r.residual);
        j["z_ratio"] = num_json(r.z_ratio);
    }
    // Saturated counts print as a string so readers can tell.
    if (r.edges == ~0ULL)
        j["edges"] = ">=2^64";
    else
        j["edges"] = r.edges;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const PixelVerdict& v, int x, int y) {
    Json j;
    j["x"] = x;
    j["y"] = y;
    j["q"] = cx_json(v.q);
    j["color"] = to_string(v.color);
    if (v.escape.witness) {
        j["word"] = v.escape.witness->word;
        j["kind"] = to_string(v.escape.witness->kind);
        j["budget_used"] = v.escape.witness->budget_used;
    }
    if (v.cert) {
        j["method"] = to_string(v.cert->method);
        j["center"] = cx_json(v.cert->V.center);
        j["radius"] = v.cert->V.radius;
        j["min_slack"] = num_json(v.cert->margins.min_slack());
    } else if (v.color == PixelColor::white && v.escape.status == EscapeStatus::bounded) {
        j["best_slack"] = num_json(v.cert_slack);
    }
    if (!v.diagnostic.empty()) j["diagnostic"] = v.diagnostic;
    return j;
}

inline Json to_json(const RenderSummary& s) {
    Json j;
    j["width"] = s.width;
    j["height"] = s.height;
    Json c;
    for (int i = 0; i < 5; ++i) c[to_string(static_cast<PixelColor>(i))] = s.counts[static_cast<std::size_t>(i)];
    j["counts"] = c;
    return j;
}

}  // namespace spz
