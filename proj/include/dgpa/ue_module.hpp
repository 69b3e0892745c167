#pragma once

#include "dgpa/ue.hpp"

namespace dgpa {

/// Representation of the enveloping algebra's generators on a DG space:
/// one operator per letter, satisfying all defining relation instances as
/// operator identities and compatible with the differentials.
struct UEModuleRep {
    Field field;
    GenSet gens;
    GradedSpace space; // the module's space
    GradedLinearMap differential;
    std::vector<GradedLinearMap> ops; // indexed by generator id
};

VerificationReport verify_ue_module_rep(const DGPoissonData& a, const UEModuleRep& r);

/// rho(M_a) = (a * -), rho(H_a) = {a, -}. The operator identities are
/// asserted; a verified module cannot fail them.
UEModuleRep module_to_ue_rep(const DGPoissonData& a, const DGPoissonModuleData& m);

/// Inverse transport: a * m := rho(M_a)(m), {a, m} := rho(H_a)(m). The output
/// is verified as a DG Poisson module; failure is an inconsistency witness.
DGPoissonModuleData ue_rep_to_module(const DGPoissonData& a, const UEModuleRep& r);

} // namespace dgpa
