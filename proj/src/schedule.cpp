#include "favwalk/schedule.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace favwalk {

namespace {

void validate(const ScheduleSpec& spec) {
    if (spec.n_min < 16) {
        throw std::invalid_argument("schedule: n_min must be >= 16");
    }
    if (spec.kind == ScheduleKind::geometric && !(spec.param > 1.0)) {
        throw std::invalid_argument("schedule: geometric ratio must be > 1");
    }
    if (spec.kind == ScheduleKind::exppow && !(spec.param > 1.0)) {
        throw std::invalid_argument("schedule: exppow exponent must be > 1");
    }
}

void push_in_range(std::vector<std::uint64_t>& out, std::uint64_t value,
                   const ScheduleSpec& spec) {
    if (value < spec.n_min || value > spec.n_max) {
        return;
    }
    if (out.empty() || out.back() != value) {
        out.push_back(value);
    }
}

// k^(5k) with saturation at 2^63.
std::uint64_t superexp_point(std::uint64_t k) {
    const std::uint64_t cap = std::uint64_t{1} << 63;
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < 5 * k; ++i) {
        if (v > cap / k) {
            return cap;
        }
        v *= k;
    }
    return v;
}

}  // namespace

std::vector<std::uint64_t> schedule_points(const ScheduleSpec& spec) {
    validate(spec);
    std::vector<std::uint64_t> out;
    if (spec.n_min > spec.n_max) {
        return out;
    }
    switch (spec.kind) {
        case ScheduleKind::geometric: {
            // Running product keeps the grid identical across libm builds.
            double v = static_cast<double>(spec.n_min);
            while (true) {
                const std::uint64_t p = static_cast<std::uint64_t>(std::ceil(v));
                if (p > spec.n_max) {
                    break;
                }
                push_in_range(out, p, spec);
                v *= spec.param;
                if (v > 2e18) {
                    break;
                }
            }
            break;
        }
        case ScheduleKind::exppow: {
            const double log_cap = std::log(static_cast<double>(spec.n_max)) + 1.0;
            for (std::uint64_t k = 1;; ++k) {
                const double e = std::pow(static_cast<double>(k), spec.param);
                if (e > log_cap) {
                    break;
                }
                const double v = std::exp(e);
                const std::uint64_t p = static_cast<std::uint64_t>(std::ceil(v));
                if (p > spec.n_max) {
                    break;
                }
                push_in_range(out, p, spec);
            }
            break;
        }
        case ScheduleKind::superexp: {
            for (std::uint64_t k = 1;; ++k) {
                const std::uint64_t p = superexp_point(k);
                if (p > spec.n_max) {
                    break;
                }
                push_in_range(out, p, spec);
            }
            break;
        }
    }
    return out;
}

ScheduleSpec parse_schedule(const std::string& text, std::uint64_t n_max) {
    ScheduleSpec spec;
    spec.n_max = n_max;
    std::string kind = text;
    std::string param;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        kind = text.substr(0, colon);
        param = text.substr(colon + 1);
    }
    if (kind == "geometric") {
        spec.kind = ScheduleKind::geometric;
        spec.param = param.empty() ? 2.0 : std::stod(param);
    } else if (kind == "exppow") {
        spec.kind = ScheduleKind::exppow;
        spec.param = param.empty() ? 1.5 : std::stod(param);
    } else if (kind == "superexp") {
        spec.kind = ScheduleKind::superexp;
        spec.param = 0.0;
    } else {
        throw std::invalid_argument("schedule: unknown kind '" + kind + "'");
    }
    validate(spec);
    return spec;
}

std::string schedule_to_string(const ScheduleSpec& spec) {
    switch (spec.kind) {
        case ScheduleKind::geometric:
            return "geometric:" + std::to_string(spec.param);
        case ScheduleKind::exppow:
            return "exppow:" + std::to_string(spec.param);
        case ScheduleKind::superexp:
            return "superexp";
    }
    return "?";
}

}  // namespace favwalk
