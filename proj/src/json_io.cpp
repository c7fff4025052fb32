#include "polywild/json_io.hpp"

#include "polywild/parse.hpp"

namespace polywild {

Json weight_to_json(const Weight& w) {
  Json arr = Json::array();
  for (const auto& g : w.w) {
    Json row = Json::array();
    for (long long v : g.c) row.push_back(v);
    arr.push_back(row);
  }
  return arr;
}

Weight weight_from_json(const Json& j) {
  std::vector<GammaElem> es;
  for (const auto& row : j) {
    std::vector<long long> c;
    for (const auto& v : row) c.push_back(v.get<long long>());
    es.push_back(GammaElem(std::move(c)));
  }
  return Weight(std::move(es));
}

Json poly_to_json(const Poly& p) { return p.to_string(); }

Json endo_to_json(const Endo& e) {
  Json j;
  j["images"] = Json::array();
  for (const Poly& p : e.images()) j["images"].push_back(p.to_string());
  if (e.inverse_witness()) {
    j["inverse"] = Json::array();
    for (const Poly& p : *e.inverse_witness()) j["inverse"].push_back(p.to_string());
  }
  if (!e.provenance().empty()) {
    Json steps = Json::array();
    for (const auto& s : e.provenance()) {
      Json sj;
      if (std::holds_alternative<ElementaryStep>(s)) {
        const auto& st = std::get<ElementaryStep>(s);
        sj["kind"] = "elementary";
        sj["i"] = st.target + 1;
        sj["alpha"] = st.alpha.to_string();
        sj["f"] = st.f.to_string();
      } else if (std::holds_alternative<AffineStep>(s)) {
        const auto& st = std::get<AffineStep>(s);
        sj["kind"] = "affine";
        Json m = Json::array();
        for (const auto& row : st.matrix) {
          Json r = Json::array();
          for (const auto& x : row) r.push_back(x.to_string());
          m.push_back(r);
        }
        sj["matrix"] = m;
        Json t = Json::array();
        for (const auto& x : st.translation) t.push_back(x.to_string());
        sj["translation"] = t;
      } else {
        const auto& st = std::get<ExpStep>(s);
        sj["kind"] = "exp";
        Json im = Json::array();
        for (const Poly& p : st.derivation_images) im.push_back(p.to_string());
        sj["derivation"] = im;
        sj["multiplier"] = st.multiplier.to_string();
      }
      steps.push_back(sj);
    }
    j["steps"] = steps;
  }
  return j;
}

Json derivation_to_json(const Derivation& d) {
  Json j;
  j["images"] = Json::array();
  for (const Poly& p : d.images()) j["images"].push_back(p.to_string());
  return j;
}

Json tame_verdict_to_json(const TameVerdict& v, const RingCtx& ring) {
  Json j;
  j["outcome"] = v.tame ? "tame" : "wild";
  Json steps = Json::array();
  for (const auto& s : v.certificate) {
    Json sj;
    if (s.kind == ReductionStep::Kind::Elementary) {
      sj["kind"] = "elementary";
      sj["i"] = s.target + 1;
      sj["c"] = s.c.to_string();
      sj["t"] = s.exponent;
    } else {
      sj["kind"] = "affine";
      Json m = Json::array();
      for (const auto& row : s.matrix) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        m.push_back(r);
      }
      sj["matrix"] = m;
    }
    steps.push_back(sj);
  }
  j["steps"] = steps;
  if (v.tame) {
    j["terminal"] = endo_to_json(v.terminal_affine)["images"];
  } else if (v.stuck) {
    Json st;
    st["images"] = Json::array();
    for (const Poly& p : v.stuck->images) st["images"].push_back(p.to_string());
    st["weight"] = weight_to_json(v.stuck->w);
    st["deg_w"] = v.stuck->degw.to_string();
    st["initial_forms"] = Json::array();
    for (const Poly& p : v.stuck->initial_forms)
      st["initial_forms"].push_back(p.to_string());
    j["stuck"] = st;
  }
  (void)ring;
  return j;
}

Json lsc_family_to_json(const LscFamily& fam) {
  Json j;
  j["params"] = {{"t0", fam.params.t0},
                 {"t1", fam.params.t1},
                 {"depth", fam.params.depth}};
  Json a0 = Json::array(), a1 = Json::array();
  for (const Rat& r : fam.params.alpha0) a0.push_back(r.str());
  for (const Rat& r : fam.params.alpha1) a1.push_back(r.str());
  j["params"]["alpha0"] = a0;
  j["params"]["alpha1"] = a1;
  j["a"] = fam.seq.a;
  j["b"] = fam.seq.b;
  if (fam.seq.max_I)
    j["max_I"] = *fam.seq.max_I;
  else
    j["max_I"] = nullptr;
  j["r"] = fam.r.to_string();
  Json fs = Json::array();
  for (const Poly& p : fam.f) fs.push_back(p.to_string());
  j["f"] = fs;
  Json ident = Json::array();
  for (const std::string& line : fam.transcript)
    ident.push_back(Json{{"name", line}, {"status", "verified"}});
  j["identities"] = ident;
  return j;
}

Json theta_family_to_json(const ThetaFamily& fam) {
  Json j;
  j["theta"] = fam.theta.to_string();
  j["d"] = fam.d;
  j["kappa"] = fam.kappa.str();
  j["e"] = fam.e;
  j["t_group_trivial_over_Q"] = fam.t_trivial_over_Q;
  j["group_determined"] = fam.group_determined;
  j["f"] = fam.f.to_string();
  Json ys = Json::array();
  for (const Poly& p : fam.y) ys.push_back(p.to_string());
  j["y"] = ys;
  return j;
}

Json wild_certificate_to_json(const WildCertificate& c) {
  Json j;
  j["kind"] = c.kind == WildCertificate::Kind::DirectSU ? "direct" : "w-test";
  j["weight"] = weight_to_json(c.w);
  Json degs = Json::array();
  for (const auto& d : c.image_degrees) degs.push_back(d.to_string());
  j["image_degrees"] = degs;
  j["transcript"] = c.transcript;
  return j;
}

namespace {
const char* clause_str(Clause c) {
  switch (c) {
    case Clause::Holds: return "holds";
    case Clause::Fails: return "fails";
    case Clause::Inconclusive: return "inconclusive";
  }
  return "?";
}
}  // namespace

Json su_report_to_json(const SUReport& r) {
  Json j;
  j["su1"] = clause_str(r.su1);
  j["su2"] = clause_str(r.su2);
  j["su3"] = clause_str(r.su3);
  j["su4"] = clause_str(r.su4);
  j["su5"] = clause_str(r.su5);
  j["su6"] = clause_str(r.su6);
  j["su1w"] = clause_str(r.su1p);
  j["su2w"] = clause_str(r.su2p);
  j["su3w"] = clause_str(r.su3p);
  if (r.a) j["a"] = r.a->str();
  if (r.b) j["b"] = r.b->str();
  if (r.c) j["c"] = r.c->str();
  if (r.odd_s) j["s"] = *r.odd_s;
  return j;
}

Endo endo_from_json(const Json& j, const RingCtx& ring) {
  std::vector<Poly> im;
  for (const auto& s : j.at("images")) im.push_back(parse_poly(s.get<std::string>(), ring));
  Endo e(std::move(im));
  if (j.contains("inverse")) {
    std::vector<Poly> inv;
    for (const auto& s : j.at("inverse")) inv.push_back(parse_poly(s.get<std::string>(), ring));
    e.set_inverse_witness(std::move(inv));
  }
  return e;
}

Derivation derivation_from_json(const Json& j, const RingCtx& ring) {
  std::vector<Poly> im;
  for (const auto& s : j.at("images")) im.push_back(parse_poly(s.get<std::string>(), ring));
  return Derivation(std::move(im));
}

}  // namespace polywild
