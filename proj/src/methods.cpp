#include "survperm/methods.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "survperm/serialize.hpp"

namespace survperm {

namespace {

[[noreturn]] void bad_method(std::string_view text) {
    throw std::invalid_argument(
        "unknown method '" + std::string(text) +
        "'; expected logrank, fh:RHO,GAMMA, mwlrt:TSTAR, milestone:TAU, gehan, or wilcoxon");
}

double parse_number(std::string_view text, std::string_view what) {
    const std::string buf(text);
    const char* begin = buf.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (buf.empty() || end != begin + buf.size() || std::isnan(v)) {
        throw std::invalid_argument("invalid " + std::string(what) + " '" + buf + "'");
    }
    return v;
}

}  // namespace

std::string AnalysisMethod::label() const {
    switch (kind) {
        case Kind::Wlrt:
            return weights.label();
        case Kind::Milestone:
            return "milestone:" + format_double(tau);
        case Kind::Gehan:
            return "gehan";
        case Kind::Wilcoxon:
            return "wilcoxon";
    }
    return "unknown";
}

AnalysisMethod AnalysisMethod::parse(std::string_view text) {
    AnalysisMethod m;
    const std::size_t colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view args =
        colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    if (head == "logrank") {
        if (colon != std::string_view::npos) bad_method(text);
        m.kind = Kind::Wlrt;
        m.weights = WeightSpec::log_rank();
    } else if (head == "fh") {
        const std::size_t comma = args.find(',');
        if (comma == std::string_view::npos) bad_method(text);
        const double rho = parse_number(args.substr(0, comma), "fh rho");
        const double gamma = parse_number(args.substr(comma + 1), "fh gamma");
        m.kind = Kind::Wlrt;
        m.weights = WeightSpec::fleming_harrington(rho, gamma);
    } else if (head == "mwlrt") {
        if (args.empty()) bad_method(text);
        m.kind = Kind::Wlrt;
        m.weights = WeightSpec::modest(parse_number(args, "mwlrt t*"));
    } else if (head == "milestone") {
        if (args.empty()) bad_method(text);
        const double tau = parse_number(args, "milestone time");
        if (!(tau > 0.0) || !std::isfinite(tau)) {
            throw std::invalid_argument("milestone time must be positive and finite");
        }
        m.kind = Kind::Milestone;
        m.tau = tau;
    } else if (head == "gehan") {
        if (colon != std::string_view::npos) bad_method(text);
        m.kind = Kind::Gehan;
    } else if (head == "wilcoxon") {
        if (colon != std::string_view::npos) bad_method(text);
        m.kind = Kind::Wilcoxon;
    } else {
        bad_method(text);
    }
    return m;
}

}  // namespace survperm
