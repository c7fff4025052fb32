#pragma once

#include <json.hpp>

#include "polywild/deriv.hpp"
#include "polywild/endo.hpp"
#include "polywild/lsc.hpp"
#include "polywild/su3wild.hpp"
#include "polywild/tame2.hpp"
#include "polywild/verdicts.hpp"

namespace polywild {

using Json = nlohmann::json;

Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json poly_to_json(const Poly& p);
Json endo_to_json(const Endo& e);
Json derivation_to_json(const Derivation& d);
Json tame_verdict_to_json(const TameVerdict& v, const RingCtx& ring);
Json lsc_family_to_json(const LscFamily& fam);
Json theta_family_to_json(const ThetaFamily& fam);
Json wild_certificate_to_json(const WildCertificate& c);
Json su_report_to_json(const SUReport& r);

Endo endo_from_json(const Json& j, const RingCtx& ring);
Derivation derivation_from_json(const Json& j, const RingCtx& ring);

}  // namespace polywild
