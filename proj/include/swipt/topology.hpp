#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include "swipt/errors.hpp"

namespace swipt {

/// Identifies a node: the primary transmitter, the primary destination or
/// one of the N secondary nodes (0-based index).
class Node {
 public:
  static constexpr Node pt() noexcept { return Node(0); }
  static constexpr Node pd() noexcept { return Node(1); }
  static constexpr Node secondary(std::size_t index) noexcept { return Node(index + 2); }

  constexpr std::size_t flat() const noexcept { return flat_; }
  constexpr bool is_secondary() const noexcept { return flat_ >= 2; }
  constexpr std::size_t secondary_index() const noexcept { return flat_ - 2; }

  std::string name() const {
    if (flat_ == 0) return "p";
    if (flat_ == 1) return "pd";
    return "s" + std::to_string(flat_ - 1);
  }

  constexpr auto operator<=>(const Node&) const noexcept = default;

 private:
  constexpr explicit Node(std::size_t flat) noexcept : flat_(flat) {}
  std::size_t flat_;
};

/// N secondary nodes: transmitters 0..N/2-1, transmitter m pairs with
/// receiver m + N/2.
class NetworkTopology {
 public:
  explicit NetworkTopology(std::size_t n_secondary) : n_(n_secondary) {
    if (n_ < 2 || n_ % 2 != 0)
      throw InputError("topology: number of secondary nodes must be even and >= 2, got " +
                       std::to_string(n_));
  }

  std::size_t n_secondary() const noexcept { return n_; }
  std::size_t n_pairs() const noexcept { return n_ / 2; }
  /// PT, PD and the secondary nodes.
  std::size_t n_nodes() const noexcept { return n_ + 2; }

  /// Partner of a secondary node; an involution.
  std::size_t pair_of(std::size_t m) const {
    check_secondary(m);
    return m < n_ / 2 ? m + n_ / 2 : m - n_ / 2;
  }

  bool contains(Node node) const noexcept { return node.flat() < n_nodes(); }

  void check_secondary(std::size_t m) const {
    if (m >= n_)
      throw InputError("topology: secondary index " + std::to_string(m) + " out of range");
  }

  bool operator==(const NetworkTopology&) const = default;

 private:
  std::size_t n_;
};

}  // namespace swipt
