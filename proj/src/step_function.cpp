#include "survperm/step_function.hpp"

#include <algorithm>
#include <stdexcept>

#include "survperm/serialize.hpp"

namespace survperm {

StepFunction::StepFunction(std::vector<double> jump_times, std::vector<double> values)
    : times_(std::move(jump_times)), values_(std::move(values)) {
    if (times_.size() != values_.size()) {
        throw std::invalid_argument("StepFunction: jump times and values differ in length");
    }
    if (!std::is_sorted(times_.begin(), times_.end())) {
        throw std::invalid_argument("StepFunction: jump times must be increasing");
    }
}

double StepFunction::operator()(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return 1.0;
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

double StepFunction::left_limit(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return 1.0;
    return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

void StepFunction::write_csv(std::ostream& os) const {
    os << "time,value\n";
    os << "0,1\n";
    for (std::size_t i = 0; i < times_.size(); ++i) {
        os << format_double(times_[i]) << ',' << format_double(values_[i]) << '\n';
    }
}

}  // namespace survperm
