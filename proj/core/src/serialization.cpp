#include "raylander/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace raylander {

namespace {

using nlohmann::json;

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j) {
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

const char* status_name(BoundednessStatus s) {
    switch (s) {
    case BoundednessStatus::bounded: return "bounded";
    case BoundednessStatus::unbounded: return "unbounded";
    case BoundednessStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

const char* certificate_name(BoundednessCertificate c) {
    switch (c) {
    case BoundednessCertificate::attracting: return "attracting";
    case BoundednessCertificate::parabolic: return "parabolic";
    case BoundednessCertificate::none: return "none";
    }
    return "?";
}

Classification classification_from_name(const std::string& name) {
    if (name == "repelling") return Classification::repelling;
    if (name == "parabolic") return Classification::parabolic;
    if (name == "invalid_attracting") return Classification::invalid_attracting;
    throw DomainError("bad-classification", "unknown classification '" + name + "'");
}

} // namespace

std::string segment_to_json(const RaySegment& seg, const ExpMap& m) {
    json samples = json::array();
    for (const RaySample& s : seg.samples) {
        samples.push_back(json{{"t", s.t}, {"re", s.z.real()}, {"im", s.z.imag()}});
    }
    json doc{
        {"metadata",
         {{"lambda", complex_to_json(m.lambda)},
          {"address", seg.address.entries},
          {"period", seg.address.period()}}},
        {"samples", samples},
    };
    return doc.dump();
}

std::string segment_to_csv(const RaySegment& seg) {
    std::ostringstream os;
    os << "t,re,im\n";
    for (const RaySample& s : seg.samples) {
        os << csv_number(s.t) << ',' << csv_number(s.z.real()) << ','
           << csv_number(s.z.imag()) << '\n';
    }
    return os.str();
}

RaySegment segment_from_json(const std::string& text, ExpMap& m) {
    const json doc = json::parse(text);
    const json& meta = doc.at("metadata");
    m = ExpMap(complex_from_json(meta.at("lambda")));
    ExternalAddress addr(meta.at("address").get<std::vector<long>>());
    if (meta.at("period").get<int>() != addr.period()) {
        throw DomainError("period-mismatch", "segment period disagrees with its address");
    }
    std::vector<RaySample> samples;
    for (const json& s : doc.at("samples")) {
        samples.push_back(RaySample{s.at("t").get<double>(),
                                    Complex(s.at("re").get<double>(), s.at("im").get<double>())});
    }
    if (samples.size() < 2) {
        throw DomainError("segment-too-short", "segment document has fewer than two samples");
    }
    return RaySegment{std::move(samples), samples.empty() ? 0.0 : 0.0, 0.0, addr};
}

std::string certificate_to_json(const LandingCertificate& cert) {
    json doc{
        {"lambda", complex_to_json(cert.map.lambda)},
        {"address", cert.address.entries},
        {"period", cert.address.period()},
        {"w", complex_to_json(cert.w)},
        {"residual", cert.residual},
        {"multiplier", complex_to_json(cert.multiplier)},
        {"classification", classification_name(cert.classification)},
        {"diameters", cert.diameters},
        {"hyp_bounds", cert.hyp_bounds},
        {"ratios", cert.ratios},
        {"pullbacks_used", cert.pullbacks_used},
        {"surrogate_flags", cert.surrogate_flags},
    };
    if (std::isfinite(cert.convergence_exponent)) {
        doc["convergence_exponent"] = cert.convergence_exponent;
    }
    return doc.dump();
}

LandingCertificate certificate_from_json(const std::string& text) {
    const json doc = json::parse(text);
    ExpMap m(complex_from_json(doc.at("lambda")));
    ExternalAddress addr(doc.at("address").get<std::vector<long>>());
    if (doc.at("period").get<int>() != addr.period()) {
        throw DomainError("period-mismatch", "certificate period disagrees with its address");
    }
    LandingCertificate cert{m, addr};
    cert.w = complex_from_json(doc.at("w"));
    cert.residual = doc.at("residual").get<double>();
    cert.multiplier = complex_from_json(doc.at("multiplier"));
    cert.classification = classification_from_name(doc.at("classification").get<std::string>());
    cert.diameters = doc.at("diameters").get<std::vector<double>>();
    cert.hyp_bounds = doc.at("hyp_bounds").get<std::vector<double>>();
    cert.ratios = doc.at("ratios").get<std::vector<double>>();
    cert.pullbacks_used = doc.at("pullbacks_used").get<int>();
    cert.surrogate_flags = doc.at("surrogate_flags").get<std::vector<std::string>>();
    if (doc.contains("convergence_exponent")) {
        cert.convergence_exponent = doc.at("convergence_exponent").get<double>();
    }
    return cert;
}

std::string postsingular_to_json(const PostsingularData& data, const ExpMap& m) {
    json orbit = json::array();
    for (Complex z : data.orbit) orbit.push_back(complex_to_json(z));
    json doc{
        {"lambda", complex_to_json(m.lambda)},
        {"status", status_name(data.status)},
        {"bounded", data.bounded()},
        {"certificate", certificate_name(data.certificate)},
        {"iterations", data.iterations},
        {"orbit", orbit},
    };
    if (data.bounded()) {
        doc["radius"] = data.radius;
        doc["basin_point"] = complex_to_json(data.basin_point);
    }
    return doc.dump();
}

std::string ladder_to_json(const PreimageLadder& ladder, const ExpMap& m, Complex z0) {
    json points = json::array();
    for (std::size_t i = 0; i < ladder.points.size(); ++i) {
        points.push_back(json{{"j", ladder.j_min + static_cast<long>(i)},
                              {"re", ladder.points[i].real()},
                              {"im", ladder.points[i].imag()}});
    }
    json doc{
        {"lambda", complex_to_json(m.lambda)},
        {"z0", complex_to_json(z0)},
        {"chart",
         {{"R", ladder.chart.R}, {"a", ladder.chart.a}, {"shift", complex_to_json(ladder.chart.shift)}}},
        {"delta", ladder.delta},
        {"points", points},
    };
    return doc.dump();
}

std::string ladder_to_csv(const PreimageLadder& ladder) {
    std::ostringstream os;
    os << "j,re,im\n";
    for (std::size_t i = 0; i < ladder.points.size(); ++i) {
        os << (ladder.j_min + static_cast<long>(i)) << ',' << csv_number(ladder.points[i].real())
           << ',' << csv_number(ladder.points[i].imag()) << '\n';
    }
    return os.str();
}

} // namespace raylander
