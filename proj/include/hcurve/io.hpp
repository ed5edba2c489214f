#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hcurve/polynomial.hpp"

namespace hcurve {

/// Minimal streaming JSON writer. Doubles are written with 17 significant
/// digits ("%.17g") so output is exact and identical across platforms;
/// non-finite values become null.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null();
    /// [re, im]
    JsonWriter& point(Complex z);

    const std::string& str() const { return out_; }

private:
    void separate();

    std::string out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

std::string format_double(double v);

/// Parses {"roots": [[re, im], ...], "multiplicities": [m1, ...]} (the
/// multiplicities array is optional). Throws DomainError on malformed input.
RootMultiset parse_roots_json(std::string_view text);

std::string roots_to_json(const RootMultiset& roots);

} // namespace hcurve
