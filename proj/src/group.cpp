#include "flowlat/group.hpp"

#include <algorithm>
#include <cctype>

#include "flowlat/errors.hpp"

namespace flowlat {

namespace {
constexpr int kTableLimit = 4096;  // precompute add/neg tables up to this order
}

Group::Group(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw input_error("group must have at least one cyclic factor");
  for (int f : factors_) {
    if (f < 1) throw input_error("cyclic factor must be >= 1");
    if (order_ > kTableLimit * 1024 / f) throw input_error("group order too large");
    order_ *= f;
  }
  if (order_ <= kTableLimit) {
    add_table_.resize(static_cast<std::size_t>(order_) * order_);
    neg_table_.resize(order_);
    for (int a = 0; a < order_; ++a) {
      neg_table_[a] = neg_slow(a);
      for (int b = 0; b < order_; ++b) {
        add_table_[static_cast<std::size_t>(a) * order_ + b] = add_slow(a, b);
      }
    }
  }
}

std::string Group::spec() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += 'x';
    s += 'Z';
    s += std::to_string(factors_[i]);
  }
  return s;
}

int Group::add_slow(int a, int b) const {
  int result = 0;
  // Mixed-radix with the last factor least significant matches lexicographic
  // order on residue tuples.
  int stride = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    const int f = factors_[i];
    const int ra = (a / stride) % f;
    const int rb = (b / stride) % f;
    result += ((ra + rb) % f) * stride;
    stride *= f;
  }
  return result;
}

int Group::neg_slow(int a) const {
  int result = 0;
  int stride = 1;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    const int f = factors_[i];
    const int ra = (a / stride) % f;
    result += ((f - ra) % f) * stride;
    stride *= f;
  }
  return result;
}

int Group::add(int a, int b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * order_ + b];
  return add_slow(a, b);
}

int Group::neg(int a) const {
  if (!neg_table_.empty()) return neg_table_[a];
  return neg_slow(a);
}

GroupElement Group::element(int index) const {
  GroupElement e(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e[i] = index % factors_[i];
    index /= factors_[i];
  }
  return e;
}

int Group::index_of(const GroupElement& e) const {
  if (e.size() != factors_.size()) {
    throw input_error("element arity " + std::to_string(e.size()) +
                      " does not match group with " + std::to_string(factors_.size()) +
                      " factors");
  }
  int index = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const int f = factors_[i];
    int r = e[i] % f;
    if (r < 0) r += f;
    index = index * f + r;
  }
  return index;
}

std::vector<GroupElement> Group::enumerate() const {
  std::vector<GroupElement> all;
  all.reserve(order_);
  for (int i = 0; i < order_; ++i) all.push_back(element(i));
  return all;
}

GroupElement Group::add(const GroupElement& a, const GroupElement& b) const {
  return element(add(index_of(a), index_of(b)));
}

GroupElement Group::neg(const GroupElement& a) const { return element(neg(index_of(a))); }

Group parse_group(std::string_view spec) {
  std::vector<int> factors;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    if (spec[pos] != 'Z' && spec[pos] != 'z') {
      throw input_error("malformed group spec '" + std::string(spec) +
                        "': expected 'Z' at position " + std::to_string(pos));
    }
    ++pos;
    if (pos >= spec.size() || !std::isdigit(static_cast<unsigned char>(spec[pos]))) {
      throw input_error("malformed group spec '" + std::string(spec) + "': missing factor");
    }
    int value = 0;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) {
      value = value * 10 + (spec[pos] - '0');
      if (value > 1000000) throw input_error("cyclic factor too large");
      ++pos;
    }
    if (value == 0) throw input_error("cyclic factor must be >= 1");
    factors.push_back(value);
    if (pos < spec.size()) {
      if (spec[pos] != 'x' && spec[pos] != 'X') {
        throw input_error("malformed group spec '" + std::string(spec) +
                          "': expected 'x' at position " + std::to_string(pos));
      }
      ++pos;
      if (pos == spec.size()) {
        throw input_error("malformed group spec '" + std::string(spec) + "': trailing 'x'");
      }
    }
  }
  if (factors.empty()) throw input_error("empty group spec");
  return Group(std::move(factors));
}

Embedding::Embedding(Group source, Group target, std::vector<int> generator_images)
    : source_(std::move(source)), target_(std::move(target)) {
  const auto& factors = source_.factors();
  if (generator_images.size() != factors.size()) {
    throw input_error("embedding needs one image per generator of the source group");
  }
  // Homomorphism: the image of each generator must have order dividing the
  // generator's factor.
  for (std::size_t i = 0; i < factors.size(); ++i) {
    int acc = target_.zero();
    for (int k = 0; k < factors[i]; ++k) acc = target_.add(acc, generator_images[i]);
    if (acc != target_.zero()) {
      throw input_error("generator images do not define a homomorphism");
    }
  }
  element_map_.resize(source_.order());
  for (int idx = 0; idx < source_.order(); ++idx) {
    const GroupElement residues = source_.element(idx);
    int image = target_.zero();
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (int k = 0; k < residues[i]; ++k) image = target_.add(image, generator_images[i]);
    }
    element_map_[idx] = image;
  }
  std::vector<int> seen = element_map_;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw input_error("map is a homomorphism but not injective");
  }
}

Embedding build_embedding(const Group& source, const Group& target,
                          const std::vector<GroupElement>& images) {
  std::vector<int> image_indices;
  image_indices.reserve(images.size());
  for (const auto& e : images) image_indices.push_back(target.index_of(e));
  return Embedding(source, target, std::move(image_indices));
}

}  // namespace flowlat
