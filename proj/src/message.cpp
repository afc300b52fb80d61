#include "tgx/message.hpp"

namespace tgx {

namespace {

std::string candidate_fields(const Candidate& c, const GraphFamily& family) {
  return "x:" + family[c.member].to_string() + ",a:" + std::to_string(c.acc) +
         ",pr:" + std::to_string(c.prop) + ",d:" + std::to_string(c.timeout);
}

}  // namespace

std::string encode(const Message& m, const GraphFamily& family) {
  struct Visitor {
    const GraphFamily& family;
    std::string operator()(const Alive&) const { return "ALIVE"; }
    std::string operator()(const LinkAccusation& a) const {
      return "ACC{q:" + (a.link_from ? std::to_string(*a.link_from) : std::string("⊥")) +
             ",h:" + std::to_string(a.accuser) + "}";
    }
    std::string operator()(const Proposal& p) const { return "NEW{" + candidate_fields(p.cand, family) + "}"; }
    std::string operator()(const CandidateAccusation& a) const {
      return "ACC{" + candidate_fields(a.cand, family) + "}";
    }
  };
  return std::visit(Visitor{family}, m);
}

}  // namespace tgx
