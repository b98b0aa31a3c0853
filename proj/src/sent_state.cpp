/*
 * Copyright (c) 2026, The paxos-hist Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "paxos_hist/sent_state.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace paxos_hist {

const char* to_string(MsgType t) {
  switch (t) {
    case MsgType::OneA: return "1a";
    case MsgType::OneB: return "1b";
    case MsgType::TwoA: return "2a";
    case MsgType::TwoB: return "2b";
    case MsgType::Preempt: return "preempt";
  }
  return "?";
}

namespace basic {
Message one_a(Ballot b) {
  Message m;
  m.type = MsgType::OneA;
  m.bal = b;
  return m;
}
Message one_b(AcceptorId a, Ballot b, Ballot max_vbal, Value max_val) {
  Message m;
  m.type = MsgType::OneB;
  m.sender = a;
  m.bal = b;
  m.max_vbal = max_vbal;
  m.max_val = max_val;
  return m;
}
Message two_a(Ballot b, Value v) {
  Message m;
  m.type = MsgType::TwoA;
  m.bal = b;
  m.val = v;
  return m;
}
Message two_b(AcceptorId a, Ballot b, Value v) {
  Message m;
  m.type = MsgType::TwoB;
  m.sender = a;
  m.bal = b;
  m.val = v;
  return m;
}
}  // namespace basic

namespace multi {
Message one_a(ProposerId p, Ballot b) {
  Message m;
  m.type = MsgType::OneA;
  m.sender = p;
  m.bal = b;
  return m;
}
Message one_b(AcceptorId a, Ballot b, std::vector<Vote> voted) {
  Message m;
  m.type = MsgType::OneB;
  m.sender = a;
  m.bal = b;
  normalize_set(voted);
  m.voted = std::move(voted);
  return m;
}
Message two_a(ProposerId p, Ballot b, std::vector<Decree> decrees) {
  Message m;
  m.type = MsgType::TwoA;
  m.sender = p;
  m.bal = b;
  normalize_set(decrees);
  m.decrees = std::move(decrees);
  return m;
}
Message two_b(AcceptorId a, Ballot b, Slot s, Value v) {
  Message m;
  m.type = MsgType::TwoB;
  m.sender = a;
  m.bal = b;
  m.slot = s;
  m.val = v;
  return m;
}
Message preempt(ProposerId to, Ballot b) {
  Message m;
  m.type = MsgType::Preempt;
  m.receiver = to;
  m.bal = b;
  return m;
}
}  // namespace multi

SentState::SentState(std::vector<Message> msgs) : msgs_(std::move(msgs)) {
  normalize_set(msgs_);
}

bool SentState::contains(const Message& m) const {
  return std::binary_search(msgs_.begin(), msgs_.end(), m);
}

bool SentState::insert(Message m) {
  auto it = std::lower_bound(msgs_.begin(), msgs_.end(), m);
  if (it != msgs_.end() && *it == m) return false;
  msgs_.insert(it, std::move(m));
  return true;
}

SentState SentState::with(std::span<const Message> delta) const {
  SentState out = *this;
  for (const auto& m : delta) out.insert(m);
  return out;
}

bool SentState::is_subset_of(const SentState& other) const {
  return std::includes(other.msgs_.begin(), other.msgs_.end(), msgs_.begin(),
                       msgs_.end());
}

// Encoding layout:
//   "PH" 0x01 varint(count) message*
//   message := type mask zz(bal) [zz(field) for each mask bit]
//              [varint(n) vote* when voted] [varint(n) decree* when decrees]
// Integer fields are zigzag varints, so every int (including -1) is
// representable and the layout stays injective for hand-built messages.

namespace {

constexpr char kMagic0 = 'P';
constexpr char kMagic1 = 'H';
constexpr char kVersion = 1;

enum FieldBit : std::uint8_t {
  kSender = 1 << 0,
  kReceiver = 1 << 1,
  kMaxVBal = 1 << 2,
  kMaxVal = 1 << 3,
  kSlot = 1 << 4,
  kVal = 1 << 5,
  kVoted = 1 << 6,
  kDecrees = 1 << 7,
};

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

void put_int(std::string& out, int v) {
  auto x = static_cast<std::int64_t>(v);
  put_varint(out, static_cast<std::uint64_t>((x << 1) ^ (x >> 63)));
}

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  bool done() const { return pos_ == in_.size(); }

  std::uint8_t byte() {
    if (pos_ >= in_.size()) throw std::invalid_argument("truncated state encoding");
    return static_cast<std::uint8_t>(in_[pos_++]);
  }

  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      std::uint8_t b = byte();
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw std::invalid_argument("overlong varint in state encoding");
  }

  int integer() {
    std::uint64_t z = varint();
    auto v = static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
    return static_cast<int>(v);
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

void encode_message(std::string& out, const Message& m) {
  const Message d;
  std::uint8_t mask = 0;
  if (m.sender != d.sender) mask |= kSender;
  if (m.receiver != d.receiver) mask |= kReceiver;
  if (m.max_vbal != d.max_vbal) mask |= kMaxVBal;
  if (m.max_val != d.max_val) mask |= kMaxVal;
  if (m.slot != d.slot) mask |= kSlot;
  if (m.val != d.val) mask |= kVal;
  if (!m.voted.empty()) mask |= kVoted;
  if (!m.decrees.empty()) mask |= kDecrees;

  out.push_back(static_cast<char>(m.type));
  out.push_back(static_cast<char>(mask));
  put_int(out, m.bal.value);
  if (mask & kSender) put_int(out, m.sender);
  if (mask & kReceiver) put_int(out, m.receiver);
  if (mask & kMaxVBal) put_int(out, m.max_vbal.value);
  if (mask & kMaxVal) put_int(out, m.max_val.id);
  if (mask & kSlot) put_int(out, m.slot.index);
  if (mask & kVal) put_int(out, m.val.id);
  if (mask & kVoted) {
    put_varint(out, m.voted.size());
    for (const auto& v : m.voted) {
      put_int(out, v.bal.value);
      put_int(out, v.slot.index);
      put_int(out, v.val.id);
    }
  }
  if (mask & kDecrees) {
    put_varint(out, m.decrees.size());
    for (const auto& d : m.decrees) {
      put_int(out, d.slot.index);
      put_int(out, d.val.id);
    }
  }
}

Message decode_message(Reader& r) {
  Message m;
  std::uint8_t type = r.byte();
  if (type > static_cast<std::uint8_t>(MsgType::Preempt)) {
    throw std::invalid_argument("unknown message tag in state encoding");
  }
  m.type = static_cast<MsgType>(type);
  std::uint8_t mask = r.byte();
  m.bal = Ballot{r.integer()};
  if (mask & kSender) m.sender = r.integer();
  if (mask & kReceiver) m.receiver = r.integer();
  if (mask & kMaxVBal) m.max_vbal = Ballot{r.integer()};
  if (mask & kMaxVal) m.max_val = Value{r.integer()};
  if (mask & kSlot) m.slot = Slot{r.integer()};
  if (mask & kVal) m.val = Value{r.integer()};
  if (mask & kVoted) {
    auto n = r.varint();
    for (std::uint64_t i = 0; i < n; ++i) {
      Vote v;
      v.bal = Ballot{r.integer()};
      v.slot = Slot{r.integer()};
      v.val = Value{r.integer()};
      m.voted.push_back(v);
    }
  }
  if (mask & kDecrees) {
    auto n = r.varint();
    for (std::uint64_t i = 0; i < n; ++i) {
      Decree d;
      d.slot = Slot{r.integer()};
      d.val = Value{r.integer()};
      m.decrees.push_back(d);
    }
  }
  return m;
}

}  // namespace

std::string canonical_encoding(const SentState& s) {
  std::string out;
  out.reserve(4 + s.size() * 6);
  out.push_back(kMagic0);
  out.push_back(kMagic1);
  out.push_back(kVersion);
  put_varint(out, s.size());
  for (const auto& m : s) encode_message(out, m);
  return out;
}

SentState decode_state(std::string_view bytes) {
  Reader r(bytes);
  if (r.byte() != kMagic0 || r.byte() != kMagic1 || r.byte() != kVersion) {
    throw std::invalid_argument("bad state encoding header");
  }
  auto n = r.varint();
  std::vector<Message> msgs;
  msgs.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) msgs.push_back(decode_message(r));
  if (!r.done()) throw std::invalid_argument("trailing bytes in state encoding");
  SentState s(msgs);
  if (s.size() != msgs.size()) {
    throw std::invalid_argument("duplicate messages in state encoding");
  }
  return s;
}

}  // namespace paxos_hist
