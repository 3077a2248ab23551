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

#include "rha/pxe.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/text.hpp"

namespace rha {

namespace {
constexpr std::string_view kDhcpServer = "dhcp-server";
constexpr std::string_view kPxeServer = "pxe-server";
constexpr std::string_view kTftpServer = "tftp-server";
}  // namespace

std::optional<Ipv4> Ipv4::try_parse(std::string_view dotted) {
  const auto parts = text::split(dotted, '.');
  if (parts.size() != 4) return std::nullopt;
  Ipv4 ip;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto p = parts[i];
    if (p.empty() || p.size() > 3 || p.front() == '+' || p.front() == '-') {
      return std::nullopt;
    }
    long long v = 0;
    if (!text::parse_int(p, v) || v > 255) return std::nullopt;
    ip.octets[i] = static_cast<std::uint8_t>(v);
  }
  return ip;
}

Ipv4 Ipv4::parse(std::string_view dotted) {
  if (auto ip = try_parse(dotted)) return *ip;
  throw Error(fmt::format("malformed IPv4 address '{}'", dotted));
}

Ipv4 Ipv4::from_u32(std::uint32_t value) {
  return Ipv4{{static_cast<std::uint8_t>(value >> 24),
               static_cast<std::uint8_t>(value >> 16),
               static_cast<std::uint8_t>(value >> 8),
               static_cast<std::uint8_t>(value)}};
}

std::uint32_t Ipv4::to_u32() const {
  return (std::uint32_t{octets[0]} << 24) | (std::uint32_t{octets[1]} << 16) |
         (std::uint32_t{octets[2]} << 8) | std::uint32_t{octets[3]};
}

std::string Ipv4::str() const {
  return fmt::format("{}.{}.{}.{}", octets[0], octets[1], octets[2], octets[3]);
}

std::string ip_to_hex(const Ipv4& ip) {
  return fmt::format("{:02X}{:02X}{:02X}{:02X}", ip.octets[0], ip.octets[1],
                     ip.octets[2], ip.octets[3]);
}

Ipv4 synthesize_host_ip(const ClusterConfig& config, std::string_view host) {
  const auto index = static_cast<std::uint32_t>(config.index_of(host));
  if (index >= 0xFFFEu) throw Error("cluster too large for 192.168.0.0/16");
  return Ipv4::from_u32(0xC0A80000u + 1u + index);
}

// ---- profile namespaces -----------------------------------------------------

void MemoryProfileNamespace::link(const std::string& hex_name,
                                  const std::string& profile) {
  links_.insert_or_assign(hex_name, profile);
}

std::optional<std::string> MemoryProfileNamespace::lookup(
    const std::string& hex_name) const {
  auto it = links_.find(hex_name);
  if (it == links_.end()) return std::nullopt;
  return it->second;
}

DirectoryProfileNamespace::DirectoryProfileNamespace(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

void DirectoryProfileNamespace::link(const std::string& hex_name,
                                     const std::string& profile) {
  std::ofstream out(dir_ / hex_name, std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", (dir_ / hex_name).string()));
  out << hex_name << " -> " << profile << '\n';
}

std::optional<std::string> DirectoryProfileNamespace::lookup(
    const std::string& hex_name) const {
  std::ifstream in(dir_ / hex_name);
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  const auto arrow = line.find(" -> ");
  if (arrow == std::string::npos) return std::nullopt;
  return line.substr(arrow + 4);
}

PxeProfileLink stage_reinstall_profile(const HostSpec& vm, const Ipv4& vm_ip,
                                       ProfileNamespace& profiles) {
  if (!vm.is_vm() || !vm.reinstallable.value_or(false)) {
    throw Error(fmt::format("{} is not reinstallable", vm.name));
  }
  if (!vm.os_profile) {
    throw Error(fmt::format("{} has no OS profile to install", vm.name));
  }
  PxeProfileLink link{vm_ip, ip_to_hex(vm_ip), *vm.os_profile};
  profiles.link(link.hex_name, link.os_profile);
  return link;
}

// ---- handshake --------------------------------------------------------------

std::string_view to_string(PxeMessageKind kind) {
  switch (kind) {
    case PxeMessageKind::DhcpDiscover: return "DHCPDISCOVER";
    case PxeMessageKind::DhcpOffer: return "DHCPOFFER";
    case PxeMessageKind::DhcpRequest: return "DHCPREQUEST";
    case PxeMessageKind::DhcpAck: return "DHCPACK";
    case PxeMessageKind::PxeBootRequest: return "PXE_BOOT_REQUEST";
    case PxeMessageKind::PxeBootReply: return "PXE_BOOT_REPLY";
    case PxeMessageKind::TftpFetch: return "TFTP_FETCH";
  }
  return "?";
}

PxeExchange pxe_handshake(std::string_view client, bool combined_server) {
  const std::string c(client);
  const std::string dhcp(kDhcpServer);
  const std::string boot(kBootFile);
  const std::string tftp(kTftpServer);
  PxeExchange x;
  x.steps.push_back({PxeMessageKind::DhcpDiscover, c, dhcp, {}, {}});
  x.steps.push_back({PxeMessageKind::DhcpOffer, dhcp, c, {}, {}});
  x.steps.push_back({PxeMessageKind::DhcpRequest, c, dhcp, {}, {}});
  if (combined_server) {
    x.steps.push_back({PxeMessageKind::DhcpAck, dhcp, c, tftp, boot});
  } else {
    const std::string pxe(kPxeServer);
    x.steps.push_back({PxeMessageKind::DhcpAck, dhcp, c, {}, {}});
    x.steps.push_back({PxeMessageKind::PxeBootRequest, c, pxe, {}, {}});
    x.steps.push_back({PxeMessageKind::PxeBootReply, pxe, c, tftp, boot});
  }
  x.steps.push_back({PxeMessageKind::TftpFetch, c, tftp, {}, boot});
  return x;
}

bool valid_exchange(const PxeExchange& x) {
  using K = PxeMessageKind;
  const auto& s = x.steps;
  if (s.size() != 5 && s.size() != 7) return false;
  const bool combined = s.size() == 5;
  const std::vector<K> want =
      combined ? std::vector<K>{K::DhcpDiscover, K::DhcpOffer, K::DhcpRequest,
                                K::DhcpAck, K::TftpFetch}
               : std::vector<K>{K::DhcpDiscover, K::DhcpOffer, K::DhcpRequest,
                                K::DhcpAck, K::PxeBootRequest, K::PxeBootReply,
                                K::TftpFetch};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].kind != want[i]) return false;
  }
  // Whoever hands out the boot file must name it and the TFTP server.
  const auto& offer_of_boot = combined ? s[3] : s[5];
  if (!offer_of_boot.server_name || !offer_of_boot.boot_file) return false;
  return s.back().boot_file == offer_of_boot.boot_file;
}

}  // namespace rha
