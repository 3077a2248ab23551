// Copyright 2026 The rhactl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rha/cluster_model.hpp"

namespace rha {

struct Ipv4 {
  std::array<std::uint8_t, 4> octets{};

  static std::optional<Ipv4> try_parse(std::string_view dotted);
  static Ipv4 parse(std::string_view dotted);
  static Ipv4 from_u32(std::uint32_t value);

  std::uint32_t to_u32() const;
  std::string str() const;

  friend bool operator==(const Ipv4&, const Ipv4&) = default;
};

/// pxelinux.cfg file name for an address: "192.168.1.10" -> "C0A8010A".
std::string ip_to_hex(const Ipv4& ip);

/// hosts.def carries no addresses, so each host gets 192.168.0.0 + 1 + its
/// declaration index.
Ipv4 synthesize_host_ip(const ClusterConfig& config, std::string_view host);

/// The pxelinux.cfg directory: hex file name -> boot profile.
class ProfileNamespace {
 public:
  virtual ~ProfileNamespace() = default;
  virtual void link(const std::string& hex_name, const std::string& profile) = 0;
  virtual std::optional<std::string> lookup(const std::string& hex_name) const = 0;
};

class MemoryProfileNamespace final : public ProfileNamespace {
 public:
  void link(const std::string& hex_name, const std::string& profile) override;
  std::optional<std::string> lookup(const std::string& hex_name) const override;

  const std::map<std::string, std::string>& links() const { return links_; }

 private:
  std::map<std::string, std::string> links_;
};

/// Writes one mapping file per link, `<dir>/<HEX>` holding "<HEX> -> <profile>".
class DirectoryProfileNamespace final : public ProfileNamespace {
 public:
  explicit DirectoryProfileNamespace(std::filesystem::path dir);
  void link(const std::string& hex_name, const std::string& profile) override;
  std::optional<std::string> lookup(const std::string& hex_name) const override;

 private:
  std::filesystem::path dir_;
};

struct PxeProfileLink {
  Ipv4 vm_ip;
  std::string hex_name;
  std::string os_profile;

  friend bool operator==(const PxeProfileLink&, const PxeProfileLink&) = default;
};

/// Points the VM's pxelinux entry at its install profile, replacing any
/// earlier link. Throws for VMs that are not reinstallable or lack a profile.
PxeProfileLink stage_reinstall_profile(const HostSpec& vm, const Ipv4& vm_ip,
                                       ProfileNamespace& profiles);

enum class PxeMessageKind {
  DhcpDiscover,
  DhcpOffer,
  DhcpRequest,
  DhcpAck,
  PxeBootRequest,
  PxeBootReply,
  TftpFetch,
};

std::string_view to_string(PxeMessageKind kind);

struct PxeMessage {
  PxeMessageKind kind;
  std::string from;
  std::string to;
  std::optional<std::string> server_name;
  std::optional<std::string> boot_file;

  friend bool operator==(const PxeMessage&, const PxeMessage&) = default;
};

struct PxeExchange {
  std::vector<PxeMessage> steps;
  friend bool operator==(const PxeExchange&, const PxeExchange&) = default;
};

inline constexpr std::string_view kBootFile = "pxelinux.0";

/// Message-level model of a network boot. With a combined DHCP/PXE server
/// the ACK names the TFTP server and boot file (5 steps). Otherwise a
/// request/reply pair with the separate PXE server follows the ACK (7 steps).
PxeExchange pxe_handshake(std::string_view client, bool combined_server);

/// True iff the steps follow one of the two shapes above.
bool valid_exchange(const PxeExchange& exchange);

}  // namespace rha
