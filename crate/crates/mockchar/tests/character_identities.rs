//! Character-layer checks: frozen mpmath values for the A-blocks, the
//! g-functions, the characters themselves, and the P/Q helpers, plus the
//! modular laws, bridges, doubling relations, closed forms, sum rules, and
//! asymptotics tying them together.

mod common;

use std::f64::consts::PI;

use common::{assert_abs_close, assert_cx_close, cv, params, tau_ref, T_REF, Z1_REF, Z2_REF, Z_REF};
use mockchar::appell::{phi, AppellArgs};
use mockchar::characters::{
    a_ring, a_tilde, asymptotic_ladder, asymptotic_prediction, character, character_closed_form,
    doubling_relation, g_function, n3_denominator, numerator_super, numerator_twisted,
    numerator_vanishing_check, p_function, q_function, CharacterId, DenominatorKind, Sector,
    WeightParams,
};
use mockchar::qseries::{jacobi_theta, mumford_theta};
use mockchar::zwegers::{phi_add, phi_tilde, r_function, RArgs};
use mockchar::{ComplexValue, Cx, EvalParams, HalfInt, TauPoint};
use proptest::prelude::*;

const I: Cx = Cx::new(0.0, 1.0);

// ---- frozen values at tau = 0.31 + 0.87i, z = 0.21 + 0.15i ----------------

const ARING_M1: [Cx; 6] = [
    Cx::new(-0.12399879412241061775, -0.4793091191777438585841),
    Cx::new(0.502881711126423751647, 0.239166602410372038252),
    Cx::new(0.2504513090297438129787, -0.2678960390750305127754),
    Cx::new(-0.8008074940855403534043, 0.5931291870852231744333),
    Cx::new(0.6198928280732261316778, -0.5675310348211076730826),
    Cx::new(0.2195913775253972090383, 0.3288016817798000834643),
];
const ARING_M2: [Cx; 6] = [
    Cx::new(0.05689429310640199462765, -0.3731591385899433730103),
    Cx::new(0.4773833961939883249989, -0.01209292301399715777709),
    Cx::new(0.05897919779016573676554, -0.1216453882683118008487),
    Cx::new(-0.7261155575513372655821, 0.6849926928745873644615),
    Cx::new(0.6302691764058972451108, -0.5610602307257806528512),
    Cx::new(0.1703422948066116357649, -0.0765524167427953634144),
];
const ARING_M3: [Cx; 6] = [
    Cx::new(0.1408377950526598572941, -0.2610375091867469807004),
    Cx::new(0.3554342405816581499292, -0.1774357097581481409932),
    Cx::new(-0.01507087036224652790145, -0.03995096824356176899768),
    Cx::new(-0.6333692072554901250049, 0.7626267170137390506074),
    Cx::new(0.6267409829988783779569, -0.541208463686045407805),
    Cx::new(0.009901721133358304824925, -0.06049507090471005566785),
];
const ARING_M4: [Cx; 6] = [
    Cx::new(0.18315445633282973257, -0.1681985044335673761848),
    Cx::new(0.1969258229847184350951, -0.2460645504299570440471),
    Cx::new(-0.03119730539097425527871, -0.003593034801856513403746),
    Cx::new(-0.5179244375236577834879, 0.8248767939553131638481),
    Cx::new(0.6198151033489836110531, -0.5054449982554779409759),
    Cx::new(-0.01044365154660227919426, -0.03844067105079984734889),
];

const G1P: Cx = Cx::new(-0.2816736523031377818064, -0.3335681798805857644083);
const G1M: Cx = Cx::new(-0.1926260308019702653937, -0.2671388446501951598133);
const G2P: Cx = Cx::new(-0.4845078139829852894368, -0.459926881599285609346);
const G2M: Cx = Cx::new(-0.4204891030875863303713, -0.3610662155759462152332);
const G3P: Cx = Cx::new(-0.6376126474685760162656, -0.8006114712125088808757);
const G3M: Cx = Cx::new(-0.8066380811428991653102, -0.7850947553415030023477);

const CH_MOD_PLUS0_M2: Cx = Cx::new(-0.7171121963929877347958, 0.1565877595911710439019);
const CH_PLUS1_M2: Cx = Cx::new(-0.01881620228691712725375, 0.8721372104229907770084);
const CH_MOD_MINUS0_M2: Cx = Cx::new(-0.1911912082617560786609, -1.028425202405664811868);
const CH_MINUS1_M2: Cx = Cx::new(-0.06979944314705179370229, -0.8084319485611423816015);
const CH_TWMINUS1_M2: Cx = Cx::new(0.1024342474579484911016, 1.79008077349686944936);
const CH_TWPLUS1_M2: Cx = Cx::new(-0.0973502320882700202261, 0.3847015577574640107198);
const CH_HON_PLUS0_M2: Cx = Cx::new(-1.743777414519711161523, 0.3391418463631198612102);
const CH_HON_PLUS2_M2: Cx = Cx::new(0.3095530217337356919314, -0.02596632718077777340631);
const CH_HON_MINUS0_M2: Cx = Cx::new(-0.3416827598926573446333, -1.744491936229564400255);
const CH_HON_MINUS2_M2: Cx = Cx::new(-0.04069965663085481268838, -0.3123584685817652234804);
const CH_MOD_PLUS1_M4: Cx = Cx::new(0.1348400587873253824492, 0.7322492225494353408187);
const CH_MOD_MINUS1_M4: Cx = Cx::new(-0.3288498787920962015091, -0.8571847359803412918721);
const CH_HON_PLUS1_M4: Cx = Cx::new(0.3790185075333530610637, 1.685382692939677279601);
const CH_HON_PLUS3_M4: Cx = Cx::new(-0.1093383899587022961653, -0.2208842478408065979633);
const CH_HON_MINUS1_M4: Cx = Cx::new(-0.5209538285001809750484, -1.520331520830483568395);
const CH_HON_MINUS3_M4: Cx = Cx::new(-0.1367459290840114279698, -0.1940379511301990153494);
const CH_MOD_PLUS0_M1: Cx = Cx::new(-1.2595991188707686662, 0.08973549564448767235434);
const CH_MOD_PLUS1_M3: Cx = Cx::new(0.06776469437966088737236, 0.8744033432868634159456);
const CH_HON_MINUS1_M1: Cx = Cx::new(0.04829530209616956414034, -0.5921089390835326092829);

const P_M2_SH: Cx = Cx::new(-0.4078805470745055267205, 0.2586078371819607305683);
const P_M2_S1: Cx = Cx::new(-0.197755770193333988819, 0.097430622583163049373);
const Q_M4_S1: Cx = Cx::new(0.1543955935921872821241, -0.06176752224902277568907);
const NUM_TW_J1K0_M2: Cx = Cx::new(-0.4316332480226401739498, -0.004163503447029662203847);
const NUM_MINUS_M2: Cx = Cx::new(-0.3335681798805857644083, 0.2816736523031377818064);

// ---- helpers ---------------------------------------------------------------

fn w(m: i64, m2: i64) -> WeightParams {
    WeightParams::new(m, m2).unwrap()
}

fn cid(m: i64, m2: i64, sector: Sector, modified: bool) -> CharacterId {
    CharacterId::new(w(m, m2), sector, modified).unwrap()
}

fn tp(tau: Cx) -> TauPoint {
    TauPoint::new(tau).unwrap()
}

fn ch_at(id: CharacterId, tau: Cx, z: Cx) -> Cx {
    character(id, tp(tau), cv(z), params())
        .unwrap_or_else(|e| panic!("character {id} at tau={tau}, z={z}: {e}"))
        .cx()
}

fn ar_at(i: u8, m: i64, tau: Cx, z: Cx) -> Cx {
    a_ring(i, m, tp(tau), cv(z), params())
        .unwrap_or_else(|e| panic!("a_ring i={i} m={m} at tau={tau}: {e}"))
        .cx()
}

fn g_at(i: u8, sign: i8, tau: Cx, z: Cx) -> Cx {
    g_function(i, sign, tp(tau), cv(z), params()).unwrap().cx()
}

fn phi_tilde_at(m: HalfInt, s: HalfInt, tau: Cx, z1: Cx, z2: Cx, t: Cx) -> Cx {
    let args = AppellArgs::new(m, s, tp(tau), cv(z1), cv(z2), cv(t)).unwrap();
    phi_tilde(args, params()).unwrap().cx()
}

fn phi_at(m: HalfInt, s: HalfInt, tau: Cx, z1: Cx, z2: Cx, t: Cx) -> Cx {
    let args = AppellArgs::new(m, s, tp(tau), cv(z1), cv(z2), cv(t)).unwrap();
    phi(args, params()).unwrap().cx()
}

fn p_at(m: i64, s: HalfInt, tau: Cx, z: Cx) -> Cx {
    p_function(m, s, tp(tau), cv(z), params()).unwrap().cx()
}

fn q_at(m: i64, s: HalfInt, tau: Cx, z: Cx) -> Cx {
    q_function(m, s, tp(tau), cv(z), params()).unwrap().cx()
}

fn tau_z() -> (Cx, Cx) {
    (tau_ref().value(), Z_REF)
}

// ---- frozen-value pins -----------------------------------------------------

#[test]
fn a_ring_matches_frozen_values() {
    let (tau, z) = tau_z();
    for (m, table) in [(1, ARING_M1), (2, ARING_M2), (3, ARING_M3), (4, ARING_M4)] {
        for i in 1..=6u8 {
            assert_cx_close(
                &format!("a_ring i={i} m={m}"),
                cv(ar_at(i, m, tau, z)),
                table[(i - 1) as usize],
                1e-12,
            );
        }
    }
}

#[test]
fn g_functions_match_frozen_values() {
    let (tau, z) = tau_z();
    for (i, sign, want) in [
        (1, 1, G1P),
        (1, -1, G1M),
        (2, 1, G2P),
        (2, -1, G2M),
        (3, 1, G3P),
        (3, -1, G3M),
    ] {
        assert_cx_close(
            &format!("g_function i={i} sign={sign}"),
            cv(g_at(i, sign, tau, z)),
            want,
            1e-12,
        );
    }
}

#[test]
fn characters_match_frozen_values() {
    let (tau, z) = tau_z();
    let cases: [(CharacterId, Cx); 19] = [
        (cid(2, 0, Sector::Plus, true), CH_MOD_PLUS0_M2),
        (cid(2, 1, Sector::Plus, true), CH_PLUS1_M2),
        (cid(2, 0, Sector::Minus, true), CH_MOD_MINUS0_M2),
        (cid(2, 1, Sector::Minus, true), CH_MINUS1_M2),
        (cid(2, 1, Sector::TwistMinus, true), CH_TWMINUS1_M2),
        (cid(2, 1, Sector::TwistPlus, true), CH_TWPLUS1_M2),
        (cid(2, 0, Sector::Plus, false), CH_HON_PLUS0_M2),
        (cid(2, 2, Sector::Plus, false), CH_HON_PLUS2_M2),
        (cid(2, 0, Sector::Minus, false), CH_HON_MINUS0_M2),
        (cid(2, 2, Sector::Minus, false), CH_HON_MINUS2_M2),
        (cid(4, 1, Sector::Plus, true), CH_MOD_PLUS1_M4),
        (cid(4, 1, Sector::Minus, true), CH_MOD_MINUS1_M4),
        (cid(4, 1, Sector::Plus, false), CH_HON_PLUS1_M4),
        (cid(4, 3, Sector::Plus, false), CH_HON_PLUS3_M4),
        (cid(4, 1, Sector::Minus, false), CH_HON_MINUS1_M4),
        (cid(4, 3, Sector::Minus, false), CH_HON_MINUS3_M4),
        (cid(1, 0, Sector::Plus, true), CH_MOD_PLUS0_M1),
        (cid(3, 1, Sector::Plus, true), CH_MOD_PLUS1_M3),
        (cid(1, 1, Sector::Minus, false), CH_HON_MINUS1_M1),
    ];
    for (id, want) in cases {
        assert_cx_close(&id.to_string(), cv(ch_at(id, tau, z)), want, 1e-12);
    }
}

// ---- A-block structure -------------------------------------------------------

#[test]
fn a_tilde_alternate_twist_form() {
    // Atilde_6 can also be reached through the shifted arguments
    // e^{-pi i m} Phi-tilde^{[m,0]}(tau, z/2+tau/2+1/4, z/2-tau/2-1/4, 0)
    let (tau, z) = tau_z();
    for m in [1i64, 2, 3] {
        let direct = a_tilde(6, m, tau_ref(), cv(z), params()).unwrap().cx();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let alt = sign
            * phi_tilde_at(
                HalfInt::from_int(m),
                HalfInt::ZERO,
                tau,
                z / 2.0 + tau / 2.0 + 0.25,
                z / 2.0 - tau / 2.0 - 0.25,
                Cx::new(0.0, 0.0),
            );
        assert_cx_close(&format!("a_tilde 6 alternate m={m}"), cv(direct), alt, 1e-10);
    }
}

#[test]
fn a_ring_s_and_t_laws() {
    let (tau, z) = tau_z();
    let taus = -1.0 / tau;
    let zs = z / tau;
    for m in [1i64, 2, 3] {
        let mf = m as f64;
        let ph = (PI * I * mf * z * z / (2.0 * tau)).exp();
        let pairs_s: [(u8, Cx, u8); 6] = [
            (1, (PI * I * mf / 4.0).exp(), 2),
            (2, (-PI * I * mf / 4.0).exp(), 1),
            (3, (PI * I * mf / 2.0).exp(), 6),
            (4, Cx::new(1.0, 0.0), 5),
            (5, Cx::new(1.0, 0.0), 4),
            (6, (-PI * I * mf / 2.0).exp(), 3),
        ];
        for (i, mu, j) in pairs_s {
            assert_cx_close(
                &format!("a_ring S law i={i} m={m}"),
                cv(ar_at(i, m, taus, zs)),
                mu * tau * ph * ar_at(j, m, tau, z),
                1e-9,
            );
        }
        let t8 = (-PI * I * mf / 8.0).exp();
        for (i, j) in [(1u8, 3u8), (2, 4), (3, 2), (4, 1)] {
            assert_cx_close(
                &format!("a_ring T law i={i} m={m}"),
                cv(ar_at(i, m, tau + 1.0, z)),
                t8 * ar_at(j, m, tau, z),
                1e-9,
            );
        }
        assert_cx_close(
            &format!("a_ring T law i=5 m={m}"),
            cv(ar_at(5, m, tau + 1.0, z)),
            ar_at(5, m, tau, z),
            1e-9,
        );
        assert_cx_close(
            &format!("a_ring T law i=6 m={m}"),
            cv(ar_at(6, m, tau + 1.0, z)),
            (PI * I * mf / 2.0).exp() * ar_at(6, m, tau, z),
            1e-9,
        );
    }
}

#[test]
fn a_tilde_s_law_exact_prefactors() {
    let (tau, z) = tau_z();
    let taus = -1.0 / tau;
    let zs = z / tau;
    let m = 2i64;
    let at = |i: u8, tt: Cx, zz: Cx| a_tilde(i, m, tp(tt), cv(zz), params()).unwrap().cx();
    let pref1 =
        tau * (2.0 * PI * I * m as f64 / tau * (z / 2.0 - 0.25 + tau / 4.0) * (z / 2.0 + 0.25 - tau / 4.0)).exp();
    assert_cx_close(
        "a_tilde S law i=1 m=2",
        cv(at(1, taus, zs)),
        pref1 * at(2, tau, z),
        1e-9,
    );
    let pref4 = tau * (2.0 * PI * I * m as f64 / tau * (z / 2.0 - 0.25) * (z / 2.0 + 0.25)).exp();
    assert_cx_close(
        "a_tilde S law i=4 m=2",
        cv(at(4, taus, zs)),
        pref4 * at(5, tau, z),
        1e-9,
    );
}

#[test]
fn g_function_modular_laws() {
    let (tau, z) = tau_z();
    let taus = -1.0 / tau;
    let zs = z / tau;
    let ell = (PI * I * z * z / tau).exp();
    for sign in [1i8, -1] {
        assert_cx_close(
            &format!("g1 S law sign={sign}"),
            cv(g_at(1, sign, taus, zs)),
            -0.5 * tau * ell * g_at(2, sign, tau, z),
            1e-9,
        );
        assert_cx_close(
            &format!("g2 S law sign={sign}"),
            cv(g_at(2, sign, taus, zs)),
            -2.0 * tau * ell * g_at(1, sign, tau, z),
            1e-9,
        );
    }
    assert_cx_close("g3+ S law", cv(g_at(3, 1, taus, zs)), -tau * ell * g_at(3, -1, tau, z), 1e-9);
    assert_cx_close("g3- S law", cv(g_at(3, -1, taus, zs)), -tau * ell * g_at(3, 1, tau, z), 1e-9);
    let e34 = (3.0 * PI * I / 4.0).exp();
    assert_cx_close("g1+ T law", cv(g_at(1, 1, tau + 1.0, z)), e34 * g_at(1, -1, tau, z), 1e-9);
    assert_cx_close("g1- T law", cv(g_at(1, -1, tau + 1.0, z)), e34 * g_at(1, 1, tau, z), 1e-9);
    let e14 = (PI * I / 4.0).exp();
    assert_cx_close("g2+ T law", cv(g_at(2, 1, tau + 1.0, z)), g_at(3, 1, tau, z), 1e-9);
    assert_cx_close("g2- T law", cv(g_at(2, -1, tau + 1.0, z)), e14 * g_at(3, -1, tau, z), 1e-9);
    assert_cx_close("g3+ T law", cv(g_at(3, 1, tau + 1.0, z)), g_at(2, 1, tau, z), 1e-9);
    assert_cx_close("g3- T law", cv(g_at(3, -1, tau + 1.0, z)), e14 * g_at(2, -1, tau, z), 1e-9);
}

#[test]
fn a_ring_reduces_to_g_functions_at_level_2() {
    let (tau, z) = tau_z();
    let a: Vec<Cx> = (1..=6).map(|i| ar_at(i, 2, tau, z)).collect();
    assert_cx_close("a1+a2 vs g1-", cv(a[0] + a[1]), 2.0 * I * g_at(1, -1, tau, z), 1e-10);
    assert_cx_close("a3+a4 vs g1+", cv(a[2] + a[3]), -2.0 * I * g_at(1, 1, tau, z), 1e-10);
    assert_cx_close("a1-a2 vs g2-", cv(a[0] - a[1]), g_at(2, -1, tau, z), 1e-10);
    assert_cx_close("a5-a6 vs g2+", cv(a[4] - a[5]), I * g_at(2, 1, tau, z), 1e-10);
    assert_cx_close("a3-a4 vs g3-", cv(a[2] - a[3]), I * g_at(3, -1, tau, z), 1e-10);
    assert_cx_close("a5+a6 vs g3+", cv(a[4] + a[5]), I * g_at(3, 1, tau, z), 1e-10);
}

#[test]
fn completed_numerators_bridge_to_a_ring_blocks() {
    let (tau, z) = tau_z();
    for m in [1i64, 2] {
        let mm = HalfInt::new(m);
        let plus = |s: HalfInt| {
            phi_tilde_at(mm, s, 2.0 * tau, z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, tau / 8.0)
        };
        let minus =
            |s: HalfInt| phi_tilde_at(mm, s, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, tau / 8.0);
        let a = |i: u8| ar_at(i, m, tau, z);
        assert_cx_close(
            &format!("bridge plus even m={m}"),
            cv(plus(HalfInt::ZERO)),
            0.5 * (a(2) + a(1)),
            1e-10,
        );
        assert_cx_close(
            &format!("bridge plus odd m={m}"),
            cv(plus(HalfInt::HALF)),
            0.5 * (a(2) - a(1)),
            1e-10,
        );
        assert_cx_close(
            &format!("bridge minus even m={m}"),
            cv(minus(HalfInt::ZERO)),
            0.5 * (a(4) + a(3)),
            1e-10,
        );
        assert_cx_close(
            &format!("bridge minus odd m={m}"),
            cv(minus(HalfInt::HALF)),
            0.5 * (a(4) - a(3)),
            1e-10,
        );
        let twm = |s: HalfInt| {
            phi_tilde_at(mm, s, 2.0 * tau, z - 0.5, z + 0.5, Cx::new(0.0, 0.0))
        };
        assert_cx_close(&format!("bridge twist-minus m={m}"), cv(twm(HalfInt::ZERO)), a(5), 1e-10);
        assert_abs_close(
            &format!("bridge twist-minus parity zero m={m}"),
            cv(twm(HalfInt::HALF)),
            Cx::new(0.0, 0.0),
            1e-10,
        );
        let twp = |s: HalfInt| {
            phi_tilde_at(mm, s, 2.0 * tau, z + tau - 0.5, z - tau + 0.5, tau / 2.0)
        };
        let (even_want, odd_want) = if m % 2 == 0 {
            (a(6), Cx::new(0.0, 0.0))
        } else {
            (Cx::new(0.0, 0.0), a(6))
        };
        assert_cx_close(&format!("bridge twist-plus s=0 m={m}"), cv(twp(HalfInt::ZERO)), even_want, 1e-10);
        assert_cx_close(&format!("bridge twist-plus s=1/2 m={m}"), cv(twp(HalfInt::HALF)), odd_want, 1e-10);
    }
}

#[test]
fn doubling_relations_hold_at_levels_1_and_2() {
    let (tau, z) = tau_z();
    for m in [1i64, 2] {
        for rel in 1..=6u8 {
            let (lhs, rhs) = doubling_relation(rel, m, tp(tau), cv(z), params()).unwrap();
            assert_cx_close(&format!("doubling rel={rel} m={m}"), lhs, rhs.cx(), 1e-9);
        }
    }
}

#[test]
fn doubling_relation_quarter_instance() {
    // the rel=1 left side at level 2 equals Aring_6^{[2]}(tau/2, z)
    let (tau, z) = tau_z();
    let (lhs, rhs) = doubling_relation(1, 2, tp(tau), cv(z), params()).unwrap();
    assert_cx_close("rel=1 m=2 sides", lhs, rhs.cx(), 1e-10);
    assert_cx_close("quarter relation", lhs, ar_at(6, 2, tau / 2.0, z), 1e-10);
}

// ---- characters: assembly, closed forms, sum rules ---------------------------

#[test]
fn modified_characters_match_a_ring_assembly() {
    // plus: (Aring2 + sgn Aring1)/(2 R^+), minus: (Aring4 + sgn Aring3)/(2 R^-),
    // twists: Aring6 or Aring5 over R^tw with the parity projector, sgn = (-1)^{m2+1}
    let (tau, z) = tau_z();
    let p = params();
    for m in [1i64, 2, 3, 4] {
        for m2 in 0..=m {
            let sgn = if (m2 + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let dplus = n3_denominator(DenominatorKind::Plus, tp(tau), cv(z), p).unwrap().cx();
            let dminus = n3_denominator(DenominatorKind::Minus, tp(tau), cv(z), p).unwrap().cx();
            let dtw = n3_denominator(DenominatorKind::Twisted, tp(tau), cv(z), p).unwrap().cx();
            let a = |i: u8| ar_at(i, m, tau, z);
            let id = CharacterId::allowing_zero(w(m, m2), Sector::Plus, true);
            assert_cx_close(
                &format!("assembly {id}"),
                cv(ch_at(id, tau, z)),
                (a(2) + sgn * a(1)) / (2.0 * dplus),
                1e-9,
            );
            let id = CharacterId::allowing_zero(w(m, m2), Sector::Minus, true);
            assert_cx_close(
                &format!("assembly {id}"),
                cv(ch_at(id, tau, z)),
                (a(4) + sgn * a(3)) / (2.0 * dminus),
                1e-9,
            );
            let proj_p = 1.0 + if (m + m2 + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let id = CharacterId::allowing_zero(w(m, m2), Sector::TwistPlus, true);
            assert_cx_close(
                &format!("assembly {id}"),
                cv(ch_at(id, tau, z)),
                proj_p * a(6) / (2.0 * dtw),
                1e-9,
            );
            let proj_m = 1.0 + sgn;
            let id = CharacterId::allowing_zero(w(m, m2), Sector::TwistMinus, true);
            assert_cx_close(
                &format!("assembly {id}"),
                cv(ch_at(id, tau, z)),
                proj_m * a(5) / (2.0 * dtw),
                1e-9,
            );
        }
    }
}

#[test]
fn closed_forms_match_series_evaluation() {
    let (tau, z) = tau_z();
    let p = params();
    let mut ids = vec![
        cid(2, 0, Sector::Plus, true),
        cid(2, 1, Sector::Plus, true),
        cid(2, 1, Sector::Plus, false),
        cid(2, 2, Sector::Plus, true),
        cid(2, 0, Sector::Minus, true),
        cid(2, 1, Sector::Minus, true),
        cid(2, 2, Sector::Minus, true),
        cid(2, 1, Sector::TwistMinus, true),
        cid(2, 1, Sector::TwistPlus, true),
        cid(2, 0, Sector::Plus, false),
        cid(2, 2, Sector::Plus, false),
        cid(2, 0, Sector::Minus, false),
        cid(2, 2, Sector::Minus, false),
    ];
    for m2 in [1i64, 3] {
        for sector in [Sector::Plus, Sector::Minus] {
            ids.push(cid(4, m2, sector, true));
            ids.push(cid(4, m2, sector, false));
        }
    }
    for id in ids {
        let closed = character_closed_form(id, tp(tau), cv(z), p).unwrap();
        assert_cx_close(&format!("closed form {id}"), closed, ch_at(id, tau, z), 1e-9);
    }
}

#[test]
fn closed_form_rejects_untabulated_labels() {
    let (tau, z) = tau_z();
    let p = params();
    for id in [
        cid(3, 0, Sector::Plus, true),
        cid(2, 0, Sector::TwistPlus, false),
        cid(4, 0, Sector::Plus, true),
        cid(4, 2, Sector::Minus, false),
    ] {
        assert!(
            character_closed_form(id, tp(tau), cv(z), p).is_err(),
            "{id} should have no closed form"
        );
    }
}

#[test]
fn honest_equals_modified_at_odd_labels() {
    let (tau, z) = tau_z();
    for sector in Sector::ALL {
        let honest = ch_at(cid(2, 1, sector, false), tau, z);
        let modified = ch_at(cid(2, 1, sector, true), tau, z);
        assert_cx_close(&format!("honest vs modified {sector} m=2 m2=1"), cv(honest), modified, 1e-10);
    }
}

#[test]
fn modified_characters_depend_on_label_parity_only() {
    let (tau, z) = tau_z();
    for sector in Sector::ALL {
        let low = ch_at(CharacterId::allowing_zero(w(4, 1), sector, true), tau, z);
        let high = ch_at(CharacterId::allowing_zero(w(4, 3), sector, true), tau, z);
        assert_cx_close(&format!("parity dependence {sector} m=4"), cv(low), high, 1e-10);
    }
}

#[test]
fn average_rule_at_level_2() {
    let (tau, z) = tau_z();
    for sector in [Sector::Plus, Sector::Minus] {
        let modified = ch_at(cid(2, 0, sector, true), tau, z);
        let h0 = ch_at(cid(2, 0, sector, false), tau, z);
        let h2 = ch_at(cid(2, 2, sector, false), tau, z);
        assert_cx_close(&format!("average rule {sector}"), cv(2.0 * modified), h0 + h2, 1e-9);
    }
}

#[test]
fn sum_rule_at_level_4() {
    let (tau, z) = tau_z();
    for sector in [Sector::Plus, Sector::Minus] {
        let h1 = ch_at(cid(4, 1, sector, false), tau, z);
        let h3 = ch_at(cid(4, 3, sector, false), tau, z);
        let modified = ch_at(cid(4, 1, sector, true), tau, z);
        assert_cx_close(&format!("sum rule {sector} m=4"), cv(h1 + h3), 2.0 * modified, 1e-9);
    }
}

// ---- modular closure ----------------------------------------------------------

#[test]
fn modified_characters_close_under_s_and_t() {
    let (tau, z) = tau_z();
    let taus = -1.0 / tau;
    let zs = z / tau;
    for m in [2i64, 3] {
        let mf = m as f64;
        let ph = (PI * I * mf * z * z / (2.0 * tau)).exp();
        let pm = (PI * I * mf / 2.0).exp();
        let p0 = if m % 2 == 0 { 1 } else { 0 };
        let chp0 = ch_at(cid(m, 0, Sector::Plus, true), tau, z);
        let chp1 = ch_at(cid(m, 1, Sector::Plus, true), tau, z);
        let chm0 = ch_at(cid(m, 0, Sector::Minus, true), tau, z);
        let chm1 = ch_at(cid(m, 1, Sector::Minus, true), tau, z);
        let chtp = ch_at(cid(m, p0, Sector::TwistPlus, true), tau, z);
        let chtm = ch_at(cid(m, 1, Sector::TwistMinus, true), tau, z);
        let e4 = (-PI * I * mf / 4.0).exp();
        assert_cx_close(
            &format!("S plus0 m={m}"),
            cv(ch_at(cid(m, 0, Sector::Plus, true), taus, zs)),
            -0.5 * e4 * ph * ((1.0 - pm) * chp1 - (pm + 1.0) * chp0),
            1e-8,
        );
        assert_cx_close(
            &format!("S plus1 m={m}"),
            cv(ch_at(cid(m, 1, Sector::Plus, true), taus, zs)),
            -0.5 * e4 * ph * ((1.0 + pm) * chp1 + (pm - 1.0) * chp0),
            1e-8,
        );
        assert_cx_close(
            &format!("S minus0 m={m}"),
            cv(ch_at(cid(m, 0, Sector::Minus, true), taus, zs)),
            -0.5 * ph * (chtm - pm * chtp),
            1e-8,
        );
        assert_cx_close(
            &format!("S minus1 m={m}"),
            cv(ch_at(cid(m, 1, Sector::Minus, true), taus, zs)),
            -0.5 * ph * (chtm + pm * chtp),
            1e-8,
        );
        assert_cx_close(
            &format!("S twist-plus m={m}"),
            cv(ch_at(cid(m, p0, Sector::TwistPlus, true), taus, zs)),
            (-PI * I * mf / 2.0).exp() * ph * (chm0 - chm1),
            1e-8,
        );
        assert_cx_close(
            &format!("S twist-minus m={m}"),
            cv(ch_at(cid(m, 1, Sector::TwistMinus, true), taus, zs)),
            -ph * (chm0 + chm1),
            1e-8,
        );
        let tph = (-(mf / 8.0 + 11.0 / 24.0) * PI * I).exp();
        assert_cx_close(
            &format!("T plus0 m={m}"),
            cv(ch_at(cid(m, 0, Sector::Plus, true), tau + 1.0, z)),
            tph * chm0,
            1e-8,
        );
        assert_cx_close(
            &format!("T plus1 m={m}"),
            cv(ch_at(cid(m, 1, Sector::Plus, true), tau + 1.0, z)),
            tph * chm1,
            1e-8,
        );
        assert_cx_close(
            &format!("T minus0 m={m}"),
            cv(ch_at(cid(m, 0, Sector::Minus, true), tau + 1.0, z)),
            -tph * chp0,
            1e-8,
        );
        assert_cx_close(
            &format!("T minus1 m={m}"),
            cv(ch_at(cid(m, 1, Sector::Minus, true), tau + 1.0, z)),
            tph * chp1,
            1e-8,
        );
        assert_cx_close(
            &format!("T twist-plus m={m}"),
            cv(ch_at(cid(m, p0, Sector::TwistPlus, true), tau + 1.0, z)),
            ((mf / 2.0 - 1.0 / 12.0) * PI * I).exp() * chtp,
            1e-8,
        );
        assert_cx_close(
            &format!("T twist-minus m={m}"),
            cv(ch_at(cid(m, 1, Sector::TwistMinus, true), tau + 1.0, z)),
            (-PI * I / 12.0).exp() * chtm,
            1e-8,
        );
    }
}

#[test]
fn mixed_closure_at_level_2() {
    let (tau, z) = tau_z();
    let taus = -1.0 / tau;
    let zs = z / tau;
    let ph = (PI * I * z * z / tau).exp();
    let chp0t = ch_at(cid(2, 0, Sector::Plus, true), tau, z);
    let chp1h = ch_at(cid(2, 1, Sector::Plus, false), tau, z);
    let chm0t = ch_at(cid(2, 0, Sector::Minus, true), tau, z);
    let chm1h = ch_at(cid(2, 1, Sector::Minus, false), tau, z);
    let chtmh = ch_at(cid(2, 1, Sector::TwistMinus, false), tau, z);
    let chtpt = ch_at(cid(2, 1, Sector::TwistPlus, true), tau, z);
    assert_cx_close(
        "mixed S modified-plus0",
        cv(ch_at(cid(2, 0, Sector::Plus, true), taus, zs)),
        I * ph * chp1h,
        1e-8,
    );
    assert_cx_close(
        "mixed S honest-plus1",
        cv(ch_at(cid(2, 1, Sector::Plus, false), taus, zs)),
        -I * ph * chp0t,
        1e-8,
    );
    assert_cx_close(
        "mixed S modified-minus0",
        cv(ch_at(cid(2, 0, Sector::Minus, true), taus, zs)),
        -0.5 * ph * (chtmh + chtpt),
        1e-8,
    );
    assert_cx_close(
        "mixed S honest-minus1",
        cv(ch_at(cid(2, 1, Sector::Minus, false), taus, zs)),
        -0.5 * ph * (chtmh - chtpt),
        1e-8,
    );
    assert_cx_close(
        "mixed S honest-twist-minus",
        cv(ch_at(cid(2, 1, Sector::TwistMinus, false), taus, zs)),
        -ph * (chm0t + chm1h),
        1e-8,
    );
    assert_cx_close(
        "mixed S modified-twist-plus",
        cv(ch_at(cid(2, 1, Sector::TwistPlus, true), taus, zs)),
        -ph * (chm0t - chm1h),
        1e-8,
    );
    let e724 = (7.0 * PI * I / 24.0).exp();
    assert_cx_close(
        "mixed T modified-plus0",
        cv(ch_at(cid(2, 0, Sector::Plus, true), tau + 1.0, z)),
        -e724 * chm0t,
        1e-8,
    );
    assert_cx_close(
        "mixed T honest-plus1",
        cv(ch_at(cid(2, 1, Sector::Plus, false), tau + 1.0, z)),
        -e724 * chm1h,
        1e-8,
    );
    assert_cx_close(
        "mixed T modified-minus0",
        cv(ch_at(cid(2, 0, Sector::Minus, true), tau + 1.0, z)),
        e724 * chp0t,
        1e-8,
    );
    assert_cx_close(
        "mixed T honest-minus1",
        cv(ch_at(cid(2, 1, Sector::Minus, false), tau + 1.0, z)),
        -e724 * chp1h,
        1e-8,
    );
    assert_cx_close(
        "mixed T honest-twist-minus",
        cv(ch_at(cid(2, 1, Sector::TwistMinus, false), tau + 1.0, z)),
        (-PI * I / 12.0).exp() * chtmh,
        1e-8,
    );
    assert_cx_close(
        "mixed T modified-twist-plus",
        cv(ch_at(cid(2, 1, Sector::TwistPlus, true), tau + 1.0, z)),
        -(-PI * I / 12.0).exp() * chtpt,
        1e-8,
    );
}

#[test]
fn denominator_modular_examples() {
    let (tau, z) = tau_z();
    let p = params();
    let den = |kind, tt: Cx, zz: Cx| n3_denominator(kind, tp(tt), cv(zz), p).unwrap().cx();
    assert_cx_close(
        "plus denominator S law",
        cv(den(DenominatorKind::Plus, -1.0 / tau, z / tau)),
        -tau * den(DenominatorKind::Plus, tau, z),
        1e-10,
    );
    assert_cx_close(
        "plus denominator T law",
        cv(den(DenominatorKind::Plus, tau + 1.0, z)),
        (11.0 * PI * I / 24.0).exp() * den(DenominatorKind::Minus, tau, z),
        1e-10,
    );
}

// ---- numerators ---------------------------------------------------------------

#[test]
fn two_variable_numerators_reduce_to_sector_numerators() {
    // under (z1, z2, t) = (z+tau/2, -z+tau/2, tau/4) the two-variable
    // numerators collapse to the four one-variable sector numerators
    let (tau, z) = tau_z();
    let p = params();
    let z1 = z + tau / 2.0;
    let z2 = -z + tau / 2.0;
    let t = tau / 4.0;
    for (m, m2) in [(2i64, 1i64), (3, 1)] {
        let ww = w(m, m2);
        let den = |kind| n3_denominator(kind, tp(tau), cv(z), p).unwrap().cx();
        let minus = numerator_super(ww, tp(tau), cv(z1), cv(z2), cv(t), p).unwrap();
        assert_cx_close(
            &format!("minus reduction m={m} m2={m2}"),
            minus,
            ch_at(cid(m, m2, Sector::Minus, false), tau, z) * den(DenominatorKind::Minus),
            1e-9,
        );
        let twisted = |j: HalfInt, k: HalfInt| {
            numerator_twisted(ww, j, k, tp(tau), cv(z1), cv(z2), cv(t), p)
                .unwrap()
                .cx()
        };
        assert_cx_close(
            &format!("plus reduction m={m} m2={m2}"),
            cv(twisted(HalfInt::ZERO, HalfInt::ZERO)),
            ch_at(cid(m, m2, Sector::Plus, false), tau, z) * den(DenominatorKind::Plus),
            1e-9,
        );
        assert_cx_close(
            &format!("twist-plus reduction m={m} m2={m2}"),
            cv(twisted(HalfInt::HALF, HalfInt::HALF)),
            ch_at(cid(m, m2, Sector::TwistPlus, false), tau, z) * den(DenominatorKind::Twisted),
            1e-9,
        );
        assert_cx_close(
            &format!("twist-minus reduction m={m} m2={m2}"),
            cv(twisted(-HalfInt::HALF, -HalfInt::HALF)),
            ch_at(cid(m, m2, Sector::TwistMinus, false), tau, z) * den(DenominatorKind::Twisted),
            1e-9,
        );
    }
}

#[test]
fn numerators_match_frozen_values() {
    let (tau, _) = tau_z();
    let p = params();
    let got = numerator_twisted(
        w(2, 1),
        HalfInt::from_int(1),
        HalfInt::ZERO,
        tau_ref(),
        cv(Z1_REF),
        cv(Z2_REF),
        cv(T_REF),
        p,
    )
    .unwrap();
    assert_cx_close("twisted numerator j=1 k=0", got, NUM_TW_J1K0_M2, 1e-12);
    let z = Z_REF;
    let got = numerator_super(
        w(2, 1),
        tau_ref(),
        cv(z + tau / 2.0),
        cv(-z + tau / 2.0),
        cv(tau / 4.0),
        p,
    )
    .unwrap();
    assert_cx_close("minus numerator at reference", got, NUM_MINUS_M2, 1e-12);
}

#[test]
fn level_1_numerator_closed_forms() {
    let (tau, z) = tau_z();
    let g3m = g_at(3, -1, tau, z);
    let g2m = g_at(2, -1, tau, z);
    let t11 = mumford_theta(1, 1, tau_ref(), cv(z), params()).unwrap().cx();
    let minus = |s: HalfInt| {
        phi_at(HalfInt::ONE, s, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, tau / 8.0)
    };
    let plus = |s: HalfInt| {
        phi_at(HalfInt::ONE, s, 2.0 * tau, z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, tau / 8.0)
    };
    assert_cx_close("minus numerator s=1/2", cv(minus(HalfInt::HALF)), -I / 2.0 * (g3m + t11), 1e-9);
    assert_cx_close("plus numerator s=1/2", cv(plus(HalfInt::HALF)), -0.5 * (g2m + t11), 1e-9);
    assert_cx_close(
        "minus numerator s=3/2",
        cv(minus(HalfInt::new(3))),
        -I / 2.0 * (g3m - t11),
        1e-9,
    );
    assert_cx_close(
        "plus numerator s=3/2",
        cv(plus(HalfInt::new(3))),
        -0.5 * (g2m - t11),
        1e-9,
    );
}

#[test]
fn special_r_values_and_correction_closed_forms() {
    let (tau, z) = tau_z();
    let p = params();
    let q16 = (2.0 * PI * I * tau / 16.0).exp();
    let r = |j: HalfInt, wpt: Cx| {
        r_function(
            RArgs {
                j,
                m: HalfInt::ONE,
                tau: tau_ref(),
                w: cv(wpt),
            },
            p,
        )
        .unwrap()
    };
    assert_cx_close("R 1/2 at tau/4", r(HalfInt::HALF, tau / 4.0), q16, 1e-10);
    assert_abs_close("R 3/2 at tau/4", r(HalfInt::new(3), tau / 4.0), Cx::new(0.0, 0.0), 1e-10);
    assert_cx_close(
        "R 1/2 at tau/4 - 1/2",
        r(HalfInt::HALF, tau / 4.0 - 0.5),
        -I * q16,
        1e-10,
    );
    assert_abs_close(
        "R 3/2 at tau/4 - 1/2",
        r(HalfInt::new(3), tau / 4.0 - 0.5),
        Cx::new(0.0, 0.0),
        1e-10,
    );
    let t11 = mumford_theta(1, 1, tau_ref(), cv(z), p).unwrap().cx();
    let q8 = (2.0 * PI * I * tau / 8.0).exp();
    let add = |z1: Cx, z2: Cx, t: Cx| {
        phi_add(HalfInt::ONE, HalfInt::HALF, tp(2.0 * tau), cv(z1), cv(z2), cv(t), p)
            .unwrap()
            .cx()
    };
    let zero = Cx::new(0.0, 0.0);
    assert_cx_close(
        "correction at twisted-minus arguments",
        cv(add(z + tau / 2.0, z - tau / 2.0, zero)),
        I / 2.0 * q8 * t11,
        1e-10,
    );
    assert_cx_close(
        "correction at twisted-minus t-form",
        cv(add(z + tau / 2.0, z - tau / 2.0, tau / 8.0)),
        I / 2.0 * t11,
        1e-10,
    );
    assert_cx_close(
        "correction at plus arguments",
        cv(add(z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, zero)),
        0.5 * q8 * t11,
        1e-10,
    );
    assert_cx_close(
        "correction at plus t-form",
        cv(add(z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, tau / 8.0)),
        0.5 * t11,
        1e-10,
    );
}

#[test]
fn minus_numerator_vanishes_at_torsion_points() {
    let p = params();
    for m in [1i64, 2, 4] {
        let ww = w(m, 0);
        for n in -2..=2i64 {
            for pp in -2..=2i64 {
                let v = numerator_vanishing_check(ww, n, pp, tau_ref(), p).unwrap();
                let tau = tau_ref().value();
                let zz = Cx::new(n as f64 + 0.25, 0.0) + pp as f64 * tau;
                let scale = numerator_super(
                    ww,
                    tau_ref(),
                    cv(zz + tau / 2.0),
                    cv(-zz + tau / 2.0),
                    cv(tau / 4.0),
                    p,
                )
                .unwrap()
                .abs();
                assert!(
                    v.abs() < 1e-9 * scale,
                    "torsion value m={m} n={n} p={pp}: |value| {:.3e} vs scale {scale:.3e}",
                    v.abs()
                );
            }
        }
    }
}

// ---- P and Q -------------------------------------------------------------------

#[test]
fn p_q_match_frozen_values() {
    let (tau, z) = tau_z();
    assert_cx_close("P m=2 s=1/2", cv(p_at(2, HalfInt::HALF, tau, z)), P_M2_SH, 1e-12);
    assert_cx_close("P m=2 s=1", cv(p_at(2, HalfInt::ONE, tau, z)), P_M2_S1, 1e-12);
    assert_cx_close("Q m=4 s=1", cv(q_at(4, HalfInt::ONE, tau, z)), Q_M4_S1, 1e-12);
}

#[test]
fn p_q_shift_rules() {
    let (tau, z) = tau_z();
    let p = params();
    let theta = |k: HalfInt, m: HalfInt| {
        jacobi_theta(k, m, tp(2.0 * tau), cv(2.0 * z), p).unwrap().cx()
    };
    let q8 = (2.0 * PI * I * tau / 8.0).exp();
    assert_cx_close(
        "P shift m=2 s=1/2",
        cv(p_at(2, HalfInt::new(3), tau, z) - p_at(2, HalfInt::HALF, tau, z)),
        -q8 * (theta(HalfInt::HALF, HalfInt::ONE) - theta(-HalfInt::HALF, HalfInt::ONE)),
        1e-10,
    );
    let q4 = (2.0 * PI * I * tau / 4.0).exp();
    let step = theta(HalfInt::ONE, HalfInt::from_int(2)) - theta(-HalfInt::ONE, HalfInt::from_int(2));
    assert_cx_close(
        "P shift m=4 s=1",
        cv(p_at(4, HalfInt::from_int(2), tau, z) - p_at(4, HalfInt::ONE, tau, z)),
        -q4 * step,
        1e-10,
    );
    assert_cx_close(
        "Q shift m=4 s=1",
        cv(q_at(4, HalfInt::from_int(2), tau, z) - q_at(4, HalfInt::ONE, tau, z)),
        -(-PI * I).exp() * q4 * step,
        1e-10,
    );
}

#[test]
fn p_q_doubling_and_split() {
    let (tau, z) = tau_z();
    for s in [HalfInt::HALF, HalfInt::ONE] {
        let sf = s.as_f64();
        let s2 = s + s;
        assert_cx_close(
            &format!("P doubling s={s}"),
            cv(2.0 * p_at(2, s, 2.0 * tau, 2.0 * z)),
            p_at(4, s2, tau, z) + (-2.0 * PI * I * sf).exp() * q_at(4, s2, tau, z),
            1e-10,
        );
        assert_cx_close(
            &format!("P split s={s}"),
            cv(p_at(4, s2, tau, z)),
            p_at(2, s, 2.0 * tau, 2.0 * z) + p_at(2, s + HalfInt::HALF, 2.0 * tau, 2.0 * z),
            1e-10,
        );
        assert_cx_close(
            &format!("Q split s={s}"),
            cv(q_at(4, s2, tau, z)),
            (2.0 * PI * I * sf).exp()
                * (p_at(2, s, 2.0 * tau, 2.0 * z) - p_at(2, s + HalfInt::HALF, 2.0 * tau, 2.0 * z)),
            1e-10,
        );
    }
}

#[test]
fn p_q_closed_forms() {
    let (tau, z) = tau_z();
    let p = params();
    let t11 = mumford_theta(1, 1, tau_ref(), cv(z), p).unwrap().cx();
    let q8 = (2.0 * PI * I * tau / 8.0).exp();
    let g3m = g_at(3, -1, tau, z);
    let g1p = g_at(1, 1, tau, z);
    assert_cx_close(
        "P closed m=2 s=1/2",
        cv(p_at(2, HalfInt::HALF, tau, z)),
        -I / 2.0 * q8 * (g3m + t11),
        1e-10,
    );
    assert_cx_close("P closed m=2 s=1", cv(p_at(2, HalfInt::ONE, tau, z)), -I * q8 * g1p, 1e-10);
    assert_cx_close(
        "P closed m=2 s=3/2",
        cv(p_at(2, HalfInt::new(3), tau, z)),
        -I / 2.0 * q8 * (g3m - t11),
        1e-10,
    );
    let q4 = (2.0 * PI * I * tau / 4.0).exp();
    let g3m2 = g_at(3, -1, 2.0 * tau, 2.0 * z);
    let g1p2 = g_at(1, 1, 2.0 * tau, 2.0 * z);
    let t11_2 = mumford_theta(1, 1, tp(2.0 * tau), cv(2.0 * z), p).unwrap().cx();
    assert_cx_close(
        "P closed m=4 s=1",
        cv(p_at(4, HalfInt::ONE, tau, z)),
        -I / 2.0 * q4 * (g3m2 + 2.0 * g1p2 + t11_2),
        1e-10,
    );
    assert_cx_close(
        "P closed m=4 s=2",
        cv(p_at(4, HalfInt::from_int(2), tau, z)),
        -I / 2.0 * q4 * (g3m2 + 2.0 * g1p2 - t11_2),
        1e-10,
    );
    assert_cx_close(
        "Q closed m=4 s=1",
        cv(q_at(4, HalfInt::ONE, tau, z)),
        I / 2.0 * q4 * (g3m2 - 2.0 * g1p2 + t11_2),
        1e-10,
    );
    assert_cx_close(
        "Q closed m=4 s=2",
        cv(q_at(4, HalfInt::from_int(2), tau, z)),
        I / 2.0 * q4 * (g3m2 - 2.0 * g1p2 - t11_2),
        1e-10,
    );
}

// ---- asymptotics ----------------------------------------------------------------

#[test]
fn asymptotic_ladder_matches_the_table() {
    let p = params();
    let temps = [0.2, 0.1, 0.05];
    let rows = [
        cid(2, 0, Sector::Plus, true),
        cid(2, 0, Sector::Plus, false),
        cid(2, 2, Sector::Plus, false),
        cid(2, 1, Sector::Plus, true),
        cid(2, 0, Sector::Minus, true),
        cid(2, 0, Sector::Minus, false),
        cid(2, 2, Sector::Minus, false),
        cid(2, 1, Sector::Minus, true),
    ];
    for a in [0.0f64, 0.3] {
        for id in rows {
            let ladder = asymptotic_ladder(id, a, &temps, p).unwrap();
            assert!(
                ladder[0] > ladder[1] && ladder[1] > ladder[2],
                "{id} a={a}: deviations {ladder:?} must decrease strictly"
            );
            let honest_minus_even =
                id.sector == Sector::Minus && !id.modified && id.weight.m2() % 2 == 0;
            if honest_minus_even {
                // the two-term closed form leaves a known subleading part of
                // relative size 2 cos(pi a) sqrt(T) e^{-pi/(4T)}
                for (dev, temp) in ladder.iter().zip(temps) {
                    let known = 2.0 * (PI * a).cos() * temp.sqrt() * (-PI / (4.0 * temp)).exp();
                    assert!(
                        (dev / known - 1.0).abs() < 0.05,
                        "{id} a={a} T={temp}: deviation {dev:.6e} vs known part {known:.6e}"
                    );
                }
            } else {
                assert!(
                    ladder[1] < 1e-4,
                    "{id} a={a}: deviation at T=0.1 is {:.3e}, expected below 1e-4",
                    ladder[1]
                );
            }
        }
    }
}

#[test]
fn asymptotic_prediction_values_track_the_closed_forms() {
    let p = params();
    let id = cid(2, 0, Sector::Plus, true);
    let a = 0.3;
    let pred = asymptotic_prediction(id, a).unwrap();
    let temp = 0.1;
    let tau = TauPoint::from_parts(0.0, temp).unwrap();
    let z = ComplexValue::new(0.0, a * temp);
    let scaled = EvalParams {
        max_terms: 65536,
        ..p
    };
    let actual = character_closed_form(id, tau, z, scaled).unwrap().cx();
    let predicted = pred.predicted_value(tau).unwrap().cx();
    let rel = (actual / predicted - 1.0).norm();
    assert!(
        rel < 1e-4,
        "prediction at T={temp} a={a}: relative gap {rel:.3e}"
    );
}

// ---- randomized invariants ------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn parity_invariance_is_pointwise(
        tre in -0.45f64..0.45,
        tim in 0.6f64..1.6,
        zre in -0.3f64..0.3,
        zim in -0.25f64..0.25,
    ) {
        let tau = Cx::new(tre, tim);
        let z = Cx::new(zre, zim);
        for sector in [Sector::Plus, Sector::Minus] {
            let low = ch_at(CharacterId::allowing_zero(w(4, 1), sector, true), tau, z);
            let high = ch_at(CharacterId::allowing_zero(w(4, 3), sector, true), tau, z);
            let diff = (low - high).norm() / (low.norm() + high.norm() + 1.0);
            prop_assert!(
                diff < 1e-8,
                "sector {} at tau={}, z={}: labels 1 and 3 differ by {:.3e}",
                sector, tau, z, diff
            );
        }
    }
}
