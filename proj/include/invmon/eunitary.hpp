#ifndef INVMON_EUNITARY_HPP
#define INVMON_EUNITARY_HPP

#include <memory>
#include <string>
#include <vector>

#include "invmon/factorisation.hpp"
#include "invmon/presentation.hpp"

namespace invmon {

// Replayable E-unitarity certificate. Routes:
//  - "single-cyclically-reduced": one relator, reduced and cyclically reduced;
//  - "amalgam-over-units": an amalgam of certified factors, glued along pairs
//    that carry unit certificates on both sides.
struct EUnitaryCertificate {
    std::string route;
    Presentation presentation;
    std::vector<std::shared_ptr<EUnitaryCertificate>> factors;
    std::vector<std::pair<Word, Word>> pairs;
    std::vector<UnitCertificate> left_units;  // per pair, in the left factor
    std::vector<UnitCertificate> right_units; // per pair, in the right factor
};

struct CertificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Certificate iff the presentation has exactly one relator, which is reduced
// and cyclically reduced. Throws on a multi-relator presentation (the route
// does not apply there, even when every relator is cyclically reduced).
EUnitaryCertificate certify_single_relator(const Presentation& p);

// Re-verify a certificate from its stored data.
bool replay_certificate(const EUnitaryCertificate& cert);

enum class UpwardKind { units, idempotents, right_unit_cyclic, left_unit_cyclic };

struct UpwardDirectedData {
    std::vector<Word> generators;
    // For the units case: a certificate per generator; replayed against p.
    std::vector<UnitCertificate> unit_certificates;
};

// Syntactic sufficient conditions for N = <generators> to be upwardly
// directed: all generators certified units; all generators freely trivial
// (idempotents); or a single generator that is a literal product of relator
// prefixes (right units) / suffixes (left units).
bool check_upward_directed(const Presentation& p, UpwardKind kind, const UpwardDirectedData& data,
                           std::string* reason = nullptr);

struct AmalgamCertification {
    EUnitaryCertificate certificate;
    PresentationFile combined; // finite special presentation of the amalgam
};

// Certify M1 *_N M2 E-unitary from certificates for the factors and unit
// certificates for every amalgamated pair, and emit the special presentation
// whose relators are those of the factors followed by u_i v_i^-1.
AmalgamCertification certify_amalgam(const PresentationFile& left,
                                     const EUnitaryCertificate& left_cert,
                                     const PresentationFile& right,
                                     const EUnitaryCertificate& right_cert,
                                     const std::vector<std::pair<Word, Word>>& pairs,
                                     const AdjanClosure& left_units,
                                     const AdjanClosure& right_units);

std::string certificate_to_json(const EUnitaryCertificate& cert);

} // namespace invmon

#endif
