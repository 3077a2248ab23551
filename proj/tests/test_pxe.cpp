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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "rha/pxe.hpp"
#include "support/generators.hpp"

using namespace rha;

TEST(Ipv4, HexNames) {
  EXPECT_EQ(ip_to_hex(Ipv4::parse("192.168.1.10")), "C0A8010A");
  EXPECT_EQ(ip_to_hex(Ipv4::parse("0.0.0.0")), "00000000");
  EXPECT_EQ(ip_to_hex(Ipv4::parse("255.255.255.255")), "FFFFFFFF");
  for (const char* bad : {"", "1.2.3", "1.2.3.4.5", "256.1.1.1", "a.b.c.d", "1..2.3", "01.2.3.4x"}) {
    EXPECT_FALSE(Ipv4::try_parse(bad)) << bad;
  }
  EXPECT_THROW(Ipv4::parse("1.2.3"), Error);
}

TEST(Ipv4, RoundTripRandom) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto v = static_cast<std::uint32_t>(rng.next());
    const auto ip = Ipv4::from_u32(v);
    EXPECT_EQ(Ipv4::parse(ip.str()), ip);
    EXPECT_EQ(ip.to_u32(), v);
    EXPECT_EQ(std::stoul(ip_to_hex(ip), nullptr, 16), v);
  }
}

TEST(Pxe, SynthesizedAddressesFollowDeclarationOrder) {
  const auto c = parse_hosts_def("PH alfa01 10\nVM vrt1 1 sl4-32\n");
  EXPECT_EQ(synthesize_host_ip(c, "alfa01").str(), "192.168.0.1");
  EXPECT_EQ(synthesize_host_ip(c, "vrt1").str(), "192.168.0.2");
  EXPECT_THROW(synthesize_host_ip(c, "nope"), Error);
}

TEST(Pxe, StagingLinksTheProfile) {
  const auto c = parse_hosts_def("PH alfa01 10\nVM vrt1 1 sl4-32 ig_WN\nVM gridce 0 sl4-32\nVM bare 1\n");
  MemoryProfileNamespace ns;
  const auto link = stage_reinstall_profile(c.at("vrt1"), Ipv4::parse("192.168.1.10"), ns);
  EXPECT_EQ(link.hex_name, "C0A8010A");
  EXPECT_EQ(ns.lookup("C0A8010A"), "sl4-32");
  stage_reinstall_profile(HostSpec::virtual_machine("vrt1", true, "sl4-64"),
                          Ipv4::parse("192.168.1.10"), ns);
  EXPECT_EQ(ns.lookup("C0A8010A"), "sl4-64");
  EXPECT_EQ(ns.links().size(), 1u);
  EXPECT_THROW(stage_reinstall_profile(c.at("gridce"), Ipv4::parse("10.0.0.1"), ns), Error);
  EXPECT_THROW(stage_reinstall_profile(c.at("bare"), Ipv4::parse("10.0.0.1"), ns), Error);
}

TEST(Pxe, DirectoryNamespace) {
  const auto dir = std::filesystem::temp_directory_path() / ("rha_pxe_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  DirectoryProfileNamespace ns(dir);
  EXPECT_FALSE(ns.lookup("C0A8010A"));
  ns.link("C0A8010A", "sl4-32");
  std::ifstream f(dir / "C0A8010A");
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "C0A8010A -> sl4-32");
  EXPECT_EQ(ns.lookup("C0A8010A"), "sl4-32");
  std::filesystem::remove_all(dir);
}

TEST(Pxe, HandshakeShapes) {
  const auto combined = pxe_handshake("vrt1", true);
  ASSERT_EQ(combined.steps.size(), 5u);
  EXPECT_EQ(combined.steps[0].kind, PxeMessageKind::DhcpDiscover);
  EXPECT_EQ(combined.steps[3].kind, PxeMessageKind::DhcpAck);
  EXPECT_EQ(combined.steps[3].boot_file, std::string(kBootFile));
  EXPECT_TRUE(combined.steps[3].server_name.has_value());
  EXPECT_EQ(combined.steps[4].kind, PxeMessageKind::TftpFetch);
  EXPECT_TRUE(valid_exchange(combined));

  const auto split = pxe_handshake("vrt1", false);
  ASSERT_EQ(split.steps.size(), 7u);
  EXPECT_EQ(split.steps[4].kind, PxeMessageKind::PxeBootRequest);
  EXPECT_EQ(split.steps[5].kind, PxeMessageKind::PxeBootReply);
  EXPECT_TRUE(valid_exchange(split));

  auto broken = combined;
  std::swap(broken.steps[1], broken.steps[2]);
  EXPECT_FALSE(valid_exchange(broken));
  broken = split;
  broken.steps.pop_back();
  EXPECT_FALSE(valid_exchange(broken));
  EXPECT_FALSE(valid_exchange({}));
}
