#include "minibox/box.hpp"

#include <cctype>
#include <stdexcept>

namespace minibox {

Box::Box(std::map<std::string, Interval> ranges) {
    for (auto& [name, value] : ranges) {
        ranges_.emplace(name, std::move(value));
    }
    normalize();
}

Box Box::uniform(const std::vector<std::string>& vars, const Interval& value) {
    Box b;
    for (const auto& v : vars) {
        b.ranges_.emplace(v, value);
    }
    if (value.is_bottom()) {
        b.set_empty();
    }
    return b;
}

bool Box::empty() const { return empty_; }

bool Box::has(std::string_view var) const { return ranges_.find(var) != ranges_.end(); }

const Interval& Box::at(std::string_view var) const {
    const auto it = ranges_.find(var);
    if (it == ranges_.end()) {
        throw std::out_of_range("unknown variable '" + std::string(var) + "'");
    }
    return it->second;
}

void Box::refine(std::string_view var, const Interval& value) {
    const auto it = ranges_.find(var);
    if (it == ranges_.end()) {
        throw std::out_of_range("unknown variable '" + std::string(var) + "'");
    }
    if (empty_) {
        return;
    }
    it->second = meet(it->second, value);
    if (it->second.is_bottom()) {
        set_empty();
    }
}

void Box::set(std::string_view var, Interval value) {
    const auto it = ranges_.find(var);
    if (it == ranges_.end()) {
        throw std::out_of_range("unknown variable '" + std::string(var) + "'");
    }
    if (empty_) {
        return;
    }
    it->second = std::move(value);
    normalize();
}

void Box::set_empty() {
    empty_ = true;
    for (auto& [_, value] : ranges_) {
        value = Interval::bottom();
    }
}

void Box::normalize() {
    for (const auto& [_, value] : ranges_) {
        if (value.is_bottom()) {
            set_empty();
            return;
        }
    }
}

std::vector<std::string> Box::vars() const {
    std::vector<std::string> out;
    out.reserve(ranges_.size());
    for (const auto& [name, _] : ranges_) {
        out.push_back(name);
    }
    return out;
}

bool Box::leq(const Box& other) const {
    if (empty()) {
        return true;
    }
    if (other.empty()) {
        return false;
    }
    for (const auto& [name, value] : ranges_) {
        if (!value.leq(other.at(name))) {
            return false;
        }
    }
    return true;
}

std::string Box::to_string() const {
    if (empty()) {
        return "empty";
    }
    std::string out;
    for (const auto& [name, value] : ranges_) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name + ":" + value.to_string();
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Box& b) { return os << b.to_string(); }

namespace {

template <typename F>
Box pointwise(const Box& a, const Box& b, F&& f) {
    std::map<std::string, Interval> out;
    for (const auto& [name, value] : a.ranges()) {
        out.emplace(name, f(value, b.at(name)));
    }
    return Box(std::move(out));
}

Box empty_like(const Box& a) {
    Box out = a;
    out.set_empty();
    return out;
}

} // namespace

Box join(const Box& a, const Box& b) {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    return pointwise(a, b, [](const Interval& x, const Interval& y) { return join(x, y); });
}

Box meet(const Box& a, const Box& b) {
    if (a.empty() || b.empty()) {
        return empty_like(a);
    }
    return pointwise(a, b, [](const Interval& x, const Interval& y) { return meet(x, y); });
}

Box widen(const Box& old_value, const Box& new_value) {
    if (old_value.empty()) {
        return new_value;
    }
    if (new_value.empty()) {
        return old_value;
    }
    return pointwise(old_value, new_value, [](const Interval& x, const Interval& y) { return widen(x, y); });
}

Box narrow(const Box& old_value, const Box& new_value) {
    if (old_value.empty() || new_value.empty()) {
        return empty_like(old_value);
    }
    return pointwise(old_value, new_value, [](const Interval& x, const Interval& y) { return narrow(x, y); });
}

Box parse_box(std::string_view text) {
    std::map<std::string, Interval> ranges;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
    };
    skip_ws();
    while (i < text.size()) {
        const std::size_t colon = text.find(':', i);
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("malformed box entry near '" + std::string(text.substr(i)) + "'");
        }
        std::string name(text.substr(i, colon - i));
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) {
            name.pop_back();
        }
        if (name.empty()) {
            throw std::invalid_argument("box entry without a variable name");
        }
        std::size_t start = colon + 1;
        while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) {
            ++start;
        }
        std::size_t close = 0;
        if (text.substr(start).starts_with("bottom")) {
            close = start + 5;
        } else {
            close = text.find(']', start);
            if (close == std::string_view::npos) {
                throw std::invalid_argument("malformed box entry near '" + std::string(text.substr(i)) + "'");
            }
        }
        Interval value = parse_interval(text.substr(start, close + 1 - start));
        if (!ranges.emplace(name, value).second) {
            throw std::invalid_argument("duplicate box variable '" + name + "'");
        }
        i = close + 1;
        skip_ws();
        if (i < text.size()) {
            if (text[i] != ',') {
                throw std::invalid_argument("expected ',' between box entries");
            }
            ++i;
            skip_ws();
        }
    }
    return Box(std::move(ranges));
}

} // namespace minibox
