#pragma once

#include <compare>
#include <string>
#include <variant>

#include "sesscheck/errors.hpp"
#include "sesscheck/kernel/channel.hpp"
#include "sesscheck/kernel/object.hpp"

namespace sesscheck::kernel {

// One element of a configuration: either an object providing a channel, or a
// forwarder that re-exposes another provider's channel under its own.
// A forwarder never targets its own provider.
class AtomicProcess {
 public:
  static AtomicProcess proc(ChannelName provider, NamelessObject obj) {
    return AtomicProcess(ProcRep{provider, std::move(obj)});
  }
  static AtomicProcess fwd(ChannelName provider, ChannelName target) {
    if (provider == target)
      throw MalformedConfigError("forwarder may not target its own provider " + to_string(provider));
    return AtomicProcess(FwdRep{provider, target});
  }

  bool is_proc() const { return std::holds_alternative<ProcRep>(rep_); }
  bool is_fwd() const { return std::holds_alternative<FwdRep>(rep_); }

  ChannelName provider() const {
    return is_proc() ? std::get<ProcRep>(rep_).provider : std::get<FwdRep>(rep_).provider;
  }
  const NamelessObject& obj() const { return std::get<ProcRep>(rep_).obj; }
  ChannelName target() const { return std::get<FwdRep>(rep_).target; }

  friend bool operator==(const AtomicProcess& a, const AtomicProcess& b) = default;
  friend std::strong_ordering operator<=>(const AtomicProcess& a, const AtomicProcess& b) {
    if (auto c = a.rep_.index() <=> b.rep_.index(); c != 0) return c;
    if (a.is_proc()) {
      const auto& pa = std::get<ProcRep>(a.rep_);
      const auto& pb = std::get<ProcRep>(b.rep_);
      if (auto c = pa.provider <=> pb.provider; c != 0) return c;
      return pa.obj <=> pb.obj;
    }
    const auto& fa = std::get<FwdRep>(a.rep_);
    const auto& fb = std::get<FwdRep>(b.rep_);
    if (auto c = fa.provider <=> fb.provider; c != 0) return c;
    return fa.target <=> fb.target;
  }

 private:
  struct ProcRep {
    ChannelName provider;
    NamelessObject obj;
    friend bool operator==(const ProcRep&, const ProcRep&) = default;
  };
  struct FwdRep {
    ChannelName provider;
    ChannelName target;
    friend bool operator==(const FwdRep&, const FwdRep&) = default;
  };

  explicit AtomicProcess(ProcRep rep) : rep_(std::move(rep)) {}
  explicit AtomicProcess(FwdRep rep) : rep_(rep) {}

  std::variant<ProcRep, FwdRep> rep_;
};

std::string to_string(const AtomicProcess& process);

}  // namespace sesscheck::kernel
