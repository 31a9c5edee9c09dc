// Structure definition files: a JSON document declaring charts, named
// tensors with polynomial-string components, and named bundles (gcs,
// hitchin, dirac, im, morphism, hitchin_groupoid) referencing them.
// Printing is canonical: fixed key order, lexicographically ordered
// polynomial terms, so print∘parse is byte-stable.
#pragma once

#include <variant>

#include "gck/groupoid.hpp"

namespace gck {

struct ParseError : GckError {
    explicit ParseError(const std::string& w) : GckError(w) {}
};

struct ResolutionError : ParseError {
    explicit ResolutionError(const std::string& w) : ParseError(w) {}
};

struct TensorEntry {
    std::string kind;  // vector | 1form | 2form | 3form | bivector | endo | map
    std::variant<std::monostate, VectorField, KForm, Bivector, EndoField, PolyMap> value;
};

struct Bundle {
    std::string kind;  // gcs | hitchin | dirac | im | morphism | hitchin_groupoid
    std::map<std::string, std::string> refs;
};

struct StructureFile {
    Chart primary;
    std::vector<std::pair<std::string, Chart>> extra_charts;
    std::vector<std::pair<std::string, TensorEntry>> tensors;
    std::vector<std::pair<std::string, Bundle>> bundles;

    StructureFile() : primary(VarList{"x"}) {}
    explicit StructureFile(Chart c) : primary(std::move(c)) {}

    const Chart& chart(const std::string& name) const;  // "" is the primary
    const TensorEntry* find_tensor(const std::string& name) const;
    const Bundle* find_bundle(const std::string& name) const;
    void add_chart(const std::string& name, Chart c);
    void add_tensor(const std::string& name, TensorEntry t);
    void add_bundle(const std::string& name, Bundle b);
};

StructureFile parse_structure_file(const std::string& text);
std::string print_structure_file(const StructureFile& f);

// Bundle resolvers; throw ResolutionError on missing or mismatched parts.
GeneralizedStructure resolve_gcs(const StructureFile& f, const std::string& bundle);
HitchinPair resolve_hitchin(const StructureFile& f, const std::string& bundle);
std::pair<Bivector, EndoField> resolve_dirac(const StructureFile& f, const std::string& bundle);
std::pair<Bivector, PolyMatrix> resolve_im(const StructureFile& f, const std::string& bundle);
GHolMapCandidate resolve_morphism(const StructureFile& f, const std::string& bundle);
HitchinGroupoidCandidate resolve_groupoid(const StructureFile& f, const std::string& bundle);

// Bundle writers used by the conversion commands.
void put_gcs(StructureFile& f, const std::string& name, const GeneralizedStructure& s);
void put_hitchin(StructureFile& f, const std::string& name, const HitchinPair& p);
void put_groupoid(StructureFile& f, const std::string& name, const HitchinGroupoidCandidate& c);

}  // namespace gck
