#include "rankfilt/value.hpp"

namespace rankfilt {

bool Value::operator==(const Value& o) const {
  if (kind != o.kind || side != o.side || ref != o.ref || word != o.word) return false;
  if (kids.size() != o.kids.size()) return false;
  for (std::size_t i = 0; i < kids.size(); ++i)
    if (!(kids[i] == o.kids[i])) return false;
  return true;
}

bool Value::operator<(const Value& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (ref != o.ref) return ref < o.ref;
  if (side != o.side) return side < o.side;
  if (word != o.word) return word < o.word;
  for (std::size_t i = 0; i < kids.size() && i < o.kids.size(); ++i) {
    if (kids[i] < o.kids[i]) return true;
    if (o.kids[i] < kids[i]) return false;
  }
  return kids.size() < o.kids.size();
}

Value v_base(SimplexRef r) {
  Value v;
  v.kind = VK::Base;
  v.ref = std::move(r);
  return v;
}

Value v_tuple(std::vector<Value> comps) {
  Value v;
  v.kind = VK::Tuple;
  v.kids = std::move(comps);
  return v;
}

Value v_side(int side, Value inner) {
  Value v;
  v.kind = VK::Side;
  v.side = side;
  v.kids.push_back(std::move(inner));
  return v;
}

Value v_cpt(EWord w, std::vector<Value> coords) {
  Value v;
  v.kind = VK::CPt;
  v.word = std::move(w);
  v.kids = std::move(coords);
  return v;
}

Value v_sppt(std::vector<Value> elems) {
  Value v;
  v.kind = VK::SpPt;
  v.kids = std::move(elems);
  return v;
}

std::string value_str(const Value& v) {
  switch (v.kind) {
    case VK::Base: {
      std::string s = "g" + std::to_string(v.ref.gen);
      if (!v.ref.word.empty()) {
        s += "<";
        for (std::size_t t = 0; t < v.ref.word.idx.size(); ++t)
          s += (t ? "," : "") + std::to_string(v.ref.word.idx[t]);
        s += ">";
      }
      return s;
    }
    case VK::Tuple: {
      std::string s = "(";
      for (std::size_t i = 0; i < v.kids.size(); ++i) s += (i ? "," : "") + value_str(v.kids[i]);
      return s + ")";
    }
    case VK::Side:
      return (v.side == 0 ? "L:" : "R:") + value_str(v.kids[0]);
    case VK::CPt: {
      std::string s = "C" + v.word.str() + "(";
      for (std::size_t i = 0; i < v.kids.size(); ++i) s += (i ? "," : "") + value_str(v.kids[i]);
      return s + ")";
    }
    case VK::SpPt: {
      std::string s = "{";
      for (std::size_t i = 0; i < v.kids.size(); ++i) s += (i ? "," : "") + value_str(v.kids[i]);
      return s + "}";
    }
  }
  return "?";
}

}  // namespace rankfilt
