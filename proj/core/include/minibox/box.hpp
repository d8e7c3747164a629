#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "minibox/interval.hpp"

namespace minibox {

/// A box: one interval per variable, over a fixed variable set.
///
/// A box is empty as soon as one of its ranges is bottom; empty boxes are kept
/// canonical (every range bottom) so that equality is structural.
class Box {
  public:
    Box() = default;
    explicit Box(std::map<std::string, Interval> ranges);

    static Box uniform(const std::vector<std::string>& vars, const Interval& value);

    [[nodiscard]] bool empty() const;
    [[nodiscard]] bool has(std::string_view var) const;
    // Throws std::out_of_range for unknown variables.
    [[nodiscard]] const Interval& at(std::string_view var) const;
    // Intersects the current range with `value`; empties the box on bottom.
    void refine(std::string_view var, const Interval& value);
    void set(std::string_view var, Interval value);
    void set_empty();

    [[nodiscard]] const std::map<std::string, Interval, std::less<>>& ranges() const { return ranges_; }
    [[nodiscard]] std::vector<std::string> vars() const;
    [[nodiscard]] std::size_t size() const { return ranges_.size(); }

    // Pointwise order; an empty box is below everything over the same variables.
    [[nodiscard]] bool leq(const Box& other) const;

    // "x:[0,10], y:[2,4]" or "empty".
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Box& a, const Box& b) = default;

  private:
    void normalize();

    std::map<std::string, Interval, std::less<>> ranges_;
    bool empty_ = false;
};

std::ostream& operator<<(std::ostream& os, const Box& b);

// Pointwise lattice operations over boxes with the same variables.
Box join(const Box& a, const Box& b);
Box meet(const Box& a, const Box& b);
Box widen(const Box& old_value, const Box& new_value);
Box narrow(const Box& old_value, const Box& new_value);

// Parses "name:[lo,hi], name:[lo,hi]" (inf keywords allowed). Throws std::invalid_argument.
Box parse_box(std::string_view text);

} // namespace minibox
