#pragma once

#include <stdexcept>
#include <string>

namespace kummer3 {

// All library failures derive from Error and expose a stable kind() tag so the
// CLI can emit machine-readable error reports.
struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define KUMMER3_ERROR(Name)                                        \
    struct Name : Error {                                          \
        explicit Name(const std::string& m) : Error(m) {}          \
        const char* kind() const noexcept override { return #Name; } \
    }

KUMMER3_ERROR(NotDegreeSeven);      // f7 = 0 or malformed coefficient list
KUMMER3_ERROR(NotSquarefree);       // disc = 0 where a nondegenerate curve is required
KUMMER3_ERROR(BadCharacteristic);   // char 2, 3 or 5
KUMMER3_ERROR(FieldTooLarge);       // prime modulus out of the supported range
KUMMER3_ERROR(DoesNotSplit);        // full 2-torsion requested but f has no full root set
KUMMER3_ERROR(RankUnstable);        // modular ranks refuse to agree after retries
KUMMER3_ERROR(KernelTooBig);        // translation-matrix system not determined up to scale
KUMMER3_ERROR(KernelEmpty);         // translation-matrix system has no solution
KUMMER3_ERROR(KernelUnexpectedDim); // duplication solve: kernel dimension != expected
KUMMER3_ERROR(NotOnKummer);         // coordinates fail the defining equations
KUMMER3_ERROR(FieldMismatch);       // operands from different fields
KUMMER3_ERROR(ReconstructionFailed);// CRT lift has no small rational preimage
KUMMER3_ERROR(ParseError);          // malformed JSON / scalar string

#undef KUMMER3_ERROR

} // namespace kummer3
