#pragma once

#include "nearforest/multigraph.hpp"

namespace nearforest {

enum class Status { yes, no };

struct Solution {
  Status status = Status::no;
  VertexSet witness;  // meaningful only when status == yes

  bool yes() const { return status == Status::yes; }
  static Solution no() { return {}; }
};

}  // namespace nearforest
