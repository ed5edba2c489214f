#include "hcurve/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "hcurve/error.hpp"

namespace hcurve {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::separate() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separate();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    separate();
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    separate();
    out_ += nlohmann::json(std::string(k)).dump();
    out_ += ':';
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separate();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    separate();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separate();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
    separate();
    out_ += nlohmann::json(std::string(v)).dump();
    return *this;
}

JsonWriter& JsonWriter::null() {
    separate();
    out_ += "null";
    return *this;
}

JsonWriter& JsonWriter::point(Complex z) {
    return begin_array().value(z.real()).value(z.imag()).end_array();
}

RootMultiset parse_roots_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("roots JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("roots") || !doc["roots"].is_array())
        throw DomainError("roots JSON: expected an object with a \"roots\" array");
    std::vector<Complex> roots;
    for (const auto& r : doc["roots"]) {
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            throw DomainError("roots JSON: each root must be [re, im]");
        roots.emplace_back(r[0].get<double>(), r[1].get<double>());
    }
    if (roots.empty()) throw DomainError("roots JSON: no roots given");
    if (!doc.contains("multiplicities")) return RootMultiset(roots);
    const auto& ms = doc["multiplicities"];
    if (!ms.is_array() || ms.size() != roots.size())
        throw DomainError("roots JSON: multiplicities must match roots in length");
    std::vector<int> mult;
    for (const auto& m : ms) {
        if (!m.is_number_integer()) throw DomainError("roots JSON: multiplicity must be an integer");
        mult.push_back(m.get<int>());
    }
    return RootMultiset(roots, mult);
}

std::string roots_to_json(const RootMultiset& roots) {
    JsonWriter w;
    w.begin_object().key("roots").begin_array();
    for (const auto& e : roots.entries()) w.point(e.root);
    w.end_array().key("multiplicities").begin_array();
    for (const auto& e : roots.entries()) w.value(e.multiplicity);
    w.end_array().end_object();
    return w.str();
}

} // namespace hcurve
