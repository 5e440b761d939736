// End-to-end walk through the library: grow a four-antenna design from the
// catalog, verify it, attach symbols, score its power distribution, and run
// a short error-rate sweep. Exits nonzero if any step misbehaves, so this
// doubles as a smoke test.
#include "ostbc/ostbc.hpp"

#include <cstdio>
#include <vector>

using namespace ostbc;

int main() {
    // Order 2 -> order 4 by the doubling construction. The result shares
    // entries between matrices, so it is amicable without being disjoint.
    DispersionFamily base = seed_family("aod2-ex3");
    DispersionFamily grown = construct2(base);
    VerifyReport rep = verify_af(grown);
    std::printf("grew %s: order %zu, %zu variables, classified %s, check %s\n",
                grown.label.c_str(), grown.order, grown.variables(),
                to_string(classify(grown)), rep.passed ? "pass" : "FAIL");
    if (!rep.passed) return 1;

    // Attach symbols with the frozen pairing that lands on the shipped G4.
    SymbolicCode code = assemble(grown, fixture_pairing("G4"));
    if (!(code.grid == fixture("G4").grid)) {
        std::printf("assembly does not match the shipped G4\n");
        return 1;
    }
    std::printf("assembled %s (%zux%zu, rate %s)\n", code.label.c_str(), code.p, code.nt,
                rate(code).str().c_str());

    // Power distribution: plain QPSK leaves silent antennas; rotating the
    // second symbol's constellation by 45 degrees removes them.
    std::vector<Constellation> plain(code.k, make_qpsk());
    std::vector<Constellation> rotated = {make_qpsk(), make_qpsk(45), make_qpsk()};
    PowerReport before = power_report(code, plain);
    PowerReport after = power_report(code, rotated);
    std::printf("outage probability: %s plain, %s rotated\n", before.p_o.str().c_str(),
                after.p_o.str().c_str());
    if (!(Rational(0) < before.p_o) || !(after.p_o == Rational(0))) return 1;

    // Short deterministic error-rate sweep on the rotated constellations.
    SimConfig cfg;
    cfg.constellations = rotated;
    cfg.snr_db = {6.0, 10.0};
    cfg.trials = 5000;
    cfg.seed = 1;
    BerResult ber = run_ber(code, cfg);
    std::printf("%s", ber_text(ber).c_str());

    // Round-trip through the interchange format.
    SymbolicCode back = code_from_json(code_to_json(code));
    if (!(back.grid == code.grid)) {
        std::printf("interchange round-trip changed the code\n");
        return 1;
    }
    std::printf("interchange round-trip ok\n");
    return 0;
}
