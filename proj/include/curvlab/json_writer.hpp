#ifndef CURVLAB_JSON_WRITER_HPP
#define CURVLAB_JSON_WRITER_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Minimal streaming JSON emitter with a deterministic byte layout: keys keep
// insertion order and doubles are printed with 17 significant digits, which
// round-trips 64-bit floats exactly. Parsing is delegated to nlohmann/json;
// this writer exists so emitted files are byte-identical across runs.

namespace curvlab {

class JsonWriter {
 public:
  void begin_object() {
    comma();
    out_ += '{';
    stack_.push_back(State::FirstInObject);
  }
  void end_object() {
    pop(State::FirstInObject, State::InObject);
    out_ += '}';
  }
  void begin_array() {
    comma();
    out_ += '[';
    stack_.push_back(State::FirstInArray);
  }
  void end_array() {
    pop(State::FirstInArray, State::InArray);
    out_ += ']';
  }
  void key(std::string_view k) {
    comma();
    write_string(k);
    out_ += ':';
    pending_key_ = true;
  }
  void value(double v) {
    comma();
    if (!std::isfinite(v)) {
      throw std::invalid_argument("JsonWriter: non-finite double");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out_ += buf;
  }
  void value(std::int64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(std::uint64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(bool v) {
    comma();
    out_ += v ? "true" : "false";
  }
  void value(std::string_view v) {
    comma();
    write_string(v);
  }
  void value(const char* v) { value(std::string_view(v)); }

  const std::string& str() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  enum class State { FirstInObject, InObject, FirstInArray, InArray };

  void comma() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (stack_.empty()) return;
    State& s = stack_.back();
    if (s == State::FirstInObject) {
      s = State::InObject;
    } else if (s == State::FirstInArray) {
      s = State::InArray;
    } else {
      out_ += ',';
    }
  }

  void pop(State first, State rest) {
    if (stack_.empty() ||
        (stack_.back() != first && stack_.back() != rest)) {
      throw std::logic_error("JsonWriter: mismatched container close");
    }
    stack_.pop_back();
  }

  void write_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<State> stack_;
  bool pending_key_ = false;
};

}  // namespace curvlab

#endif  // CURVLAB_JSON_WRITER_HPP
