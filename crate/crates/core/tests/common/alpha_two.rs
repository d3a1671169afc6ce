/// H at the shared draws for the α = 2 families, by 30-digit quadrature
/// on a loop contour (independent of the library's integrators).
pub const ALPHA_TWO_ORACLE: &[(&str, &[(f64, f64)])] = &[
    ("segment II(1.2)", &[
        (0.27736925031922033, 2.9489695248190601419),
        (1.5260513407150826, 0.084932852705317343745),
        (3.961365157650391, 0.0099349498354396749889),
        (0.30447472679627013, 2.6838732380906741776),
        (0.5590144650764853, 0.83852917908099459865),
        (2.74502399384843, 0.022560479570393677863),
        (1.0246550934791783, 0.21096534519727645746),
        (3.6905585413954665, 0.011634834996050994035),
        (3.9308804085467126, 0.010107545157382196759),
        (1.6541160773305117, 0.070725216396255098932),
        (4.2188588943236915, 0.0086341479691255620734),
        (2.7412351348886497, 0.022630491282021861293),
        (3.0625158857966257, 0.017653558710142726582),
        (2.2618817223647865, 0.034860240268879023937),
        (3.503218545900683, 0.013069910851061546712),
        (3.3574877101748424, 0.014371485477580741095),
        (4.770330820758972, 0.0065686260224602937361),
        (3.018911892471104, 0.018229559530719053656),
        (4.0098210523167745, 0.0096693090403302682706),
        (4.934817314658399, 0.0060917103855382869467),
    ]),
    ("segment II(1.5)", &[
        (0.27736925031922033, -9.0962122938203991892),
        (1.5260513407150826, 0.10237097891344717657),
        (3.961365157650391, 0.0076822572231472306405),
        (0.30447472679627013, -13.406914438288895998),
        (0.5590144650764853, 2.4516147076542532453),
        (2.74502399384843, 0.020172030298505645019),
        (1.0246550934791783, 0.33952245645755744409),
        (3.6905585413954665, 0.0092384352155992866858),
        (3.9308804085467126, 0.0078381297066668108184),
        (1.6541160773305117, 0.081235429738747690029),
        (4.2188588943236915, 0.0065239834051494762601),
        (2.7412351348886497, 0.020246574668702115309),
        (3.0625158857966257, 0.015081070241983327865),
        (2.2618817223647865, 0.033999392898673422775),
        (3.503218545900683, 0.010586669150063336232),
        (3.3574877101748424, 0.011834860483952557891),
        (4.770330820758972, 0.0047500929882183249948),
        (3.018911892471104, 0.015664490962421453251),
        (4.0098210523167745, 0.0074433335316532765246),
        (4.934817314658399, 0.0043532062212291635049),
    ]),
    ("segment II(1.7)", &[
        (0.27736925031922033, -138.84515860520573991),
        (1.5260513407150826, 0.099256838823679939759),
        (3.961365157650391, 0.0050706275812824067793),
        (0.30447472679627013, 78.76416648192347567),
        (0.5590144650764853, 5.6116573653582189431),
        (2.74502399384843, 0.014833784736103931967),
        (1.0246550934791783, 0.48127868920702315122),
        (3.6905585413954665, 0.0062143707506600617908),
        (3.9308804085467126, 0.0051840341718182706257),
        (1.6541160773305117, 0.074821614859897507213),
        (4.2188588943236915, 0.0042365776546084892192),
        (2.7412351348886497, 0.014895518025328980814),
        (3.0625158857966257, 0.010706713957642489463),
        (2.2618817223647865, 0.026848994004289528334),
        (3.503218545900683, 0.0072247346675861013248),
        (3.3574877101748424, 0.0081749245271739630805),
        (4.770330820758972, 0.0029920448165203096393),
        (3.018911892471104, 0.011170388582281284257),
        (4.0098210523167745, 0.0048973189259898172942),
        (4.934817314658399, 0.002719780592966250243),
    ]),
    ("vertex C", &[
        (0.27736925031922033, 1.6431635705547186836),
        (1.5260513407150826, 0.067852819503244810127),
        (3.961365157650391, 0.010131389010828621285),
        (0.30447472679627013, 1.4211087452632037868),
        (0.5590144650764853, 0.48248049700603459413),
        (2.74502399384843, 0.021074956592858772783),
        (1.0246550934791783, 0.14919069971305787178),
        (3.6905585413954665, 0.011670899529698157573),
        (3.9308804085467126, 0.010288969916452056493),
        (1.6541160773305117, 0.057814726340477062231),
        (4.2188588943236915, 0.0089335353639963872515),
        (2.7412351348886497, 0.021133125837351695966),
        (3.0625158857966257, 0.016939138633220528443),
        (2.2618817223647865, 0.031007328200834136248),
        (3.503218545900683, 0.012950772292974906316),
        (3.3574877101748424, 0.014097721189925560342),
        (4.770330820758972, 0.0069888383314305587499),
        (3.018911892471104, 0.017431095017493218823),
        (4.0098210523167745, 0.0098882593663305565326),
        (4.934817314658399, 0.0065310151292487062886),
    ]),
];
