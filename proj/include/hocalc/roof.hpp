#pragma once

// Left roofs X <-s- apex -g-> Y with s a quasi-isomorphism, their composition
// through a cone-built common apex, and conversion to Ext classes.

#include <string>

#include "hocalc/ext.hpp"

namespace hocalc {

class Roof {
public:
    /// Checks that s and g share the apex and that s is a quasi-isomorphism.
    Roof(ChainMap s, ChainMap g);

    const ComplexPtr& source() const { return s_.target(); }
    const ComplexPtr& target() const { return g_.target(); }
    const ComplexPtr& apex() const { return s_.source(); }
    const ChainMap& s() const { return s_; }
    const ChainMap& g() const { return g_; }

    /// X <-id- X -f-> Y.
    static Roof from_map(const ChainMap& f);
    static Roof identity(const ComplexPtr& x);
    /// X <-id- X -0-> Y.
    static Roof zero(const ComplexPtr& x, const ComplexPtr& y);

private:
    ChainMap s_;
    ChainMap g_;
};

/// For 0 -> A -> B -> C -> 0: the roof C[0] <- [A -> B] -> A[1] with the apex in
/// degrees -1, 0, s^0 the projection and g^(-1) = id_A.
Roof ses_to_roof(const ExtensionSeq& e);

/// r[k]: every complex and leg shifted by k.
Roof shift(const Roof& r, int k);

/// Common apex of r1 : A -> B and r2 : B -> C: the projections p1, p2 out of
/// cone(phi)[-1], phi = (g1, -s2) : X1 (+) X2 -> B, and a homotopy from g1 p1 to s2 p2.
struct RoofComposite {
    Roof roof;
    ChainMap p1;
    ChainMap p2;
    Homotopy h;
};

RoofComposite compose_roofs_detailed(const Roof& r1, const Roof& r2);
/// The roof A <-(s1 p1)- cone(phi)[-1] -(g2 p2)-> C.
Roof compose_roofs(const Roof& r1, const Roof& r2);

/// Sign relating Hom_D(M, N[k]) to Ext^k(M, N) so that roof composition matches
/// yoneda_product: (-1)^(k(k-1)/2).
int roof_ext_sign(int k);

/// For a roof M[a] -> N[b] between shifted modules, the class in Ext^(b-a)(M, N):
/// a strict lift of the truncated resolution of M through s, followed by g.
/// Throws UnsupportedEndpoints for other endpoints.
ExtElement to_ext_class(const Roof& r);

/// Equality in D(A) for shifted-module endpoints, decided on Ext coordinates.
bool roof_equal(const Roof& r1, const Roof& r2);

struct LemmaReport {
    std::size_t dim_ext1_a1 = 0; // Ext^1(F2/F1, F1)
    std::size_t dim_ext1_a2 = 0; // Ext^1(G/F2, F2/F1)
    std::size_t dim_ext2 = 0;    // Ext^2(G/F2, F1)
    bool a1_trivial = false;
    bool a2_trivial = false;
    bool alpha_trivial = false;
    /// alpha from the roof composite, the spliced sequence and the Yoneda product agree.
    bool routes_agree = false;
    /// The composite equals the zero roof (G/F2)[0] <-id- (G/F2)[0] -0-> F1[2].
    bool equals_zero_roof = false;
};

struct FiltrationClasses {
    ExtElement a1;
    ExtElement a2;
    ExtElement alpha;
    LemmaReport report;
};

/// Builds the two short exact sequences of the filtration, their roofs and the
/// composite, and reads off alpha in Ext^2(G/F2, F1). Throws DegenerateFiltration
/// when F1 = F2 or F2 = G.
FiltrationClasses filtration_two_class(const Filtration& flt);

} // namespace hocalc
