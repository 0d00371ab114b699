//! Shared fixtures for the integration tests: frozen extended-precision
//! reference tables and an independently implemented series oracle.
//!
//! The tables were produced offline with 60-digit arithmetic (mpmath) and
//! rounded to f64; rows whose summation condition number exceeded 300 were
//! rejected at generation time, so every entry is representable to ~1e-13
//! relative by a careful double-precision summation.

#![allow(dead_code)]

/// Randomized evaluation points of the three-parameter function:
/// `(a, b, g, z, E_{a,b}^{g}(z))`, seed 20260816.
pub const GENERAL_SWEEP: [(f64, f64, f64, f64, f64); 48] = [
    (1.3418986789956862, 1.2034530157194274, 2.665303755798117, 2.858077971112368, 22.501335264725201),
    (0.6442218483346186, 1.6143423807789867, 1.3094021343606315, 2.426910305156701, 64.719692161844006),
    (0.4766770332154652, 1.740223579393147, -0.0889168861705687, -1.376554316526967, 1.1686649211718069),
    (1.2508683484616543, 1.0990024305466566, -2.626033400506702, -2.966396309191964, 13.159949534318534),
    (0.5135672078354031, 1.8600956611548252, 2.035423804225683, 1.0887628999593248, 10.167833593545265),
    (1.445364611961459, 1.3779974385971703, -0.5333885948570871, -2.8439761984334693, 1.9104704701517702),
    (0.6335855243595097, 1.3019087132226446, 1.675514667524376, 1.3637281154924166, 14.999251298986284),
    (0.6759255055590957, 1.4347271570212445, -2.6015020173810535, -3.707219029930563, 33.439430240150345),
    (1.0141816086673354, 1.0994721650447017, 0.16499323619357886, -0.6447382400252089, 0.96532096771617782),
    (0.9742983029896546, 1.0426167873256813, -2.824701476191567, -2.0856249611278628, 13.616805172841930),
    (0.9583861654317587, 1.3881801187205505, 0.9318735016371074, -3.311949418606682, 0.21965118572343104),
    (1.4122555277249236, 0.6329584732529525, -2.174683000907009, 2.3813735541607484, -2.1421935067938417),
    (0.48307946996116935, 0.5927257489851108, -1.712557309271816, 2.8219001524827574, 12.567889251539802),
    (0.5769713736886357, 1.6402937636025277, 0.1030240166785319, -2.332003190204082, 0.99216251800842378),
    (0.9642853843784929, 0.5595062975742855, -0.18747076864091605, 3.756972612783704, -3.2970719788207521),
    (0.6178397174616149, 0.8596296053039048, 0.7559538695879713, -2.8443379774068047, 0.21422335469180484),
    (1.1220030420368239, 0.9436071049012826, 1.5191192260892876, -3.0031059086036542, -0.16324238215240348),
    (1.3850737694968165, 1.2486838735700982, 1.3790334817442567, 0.7249716720941226, 1.9417859883282131),
    (1.1576585616833355, 1.0447907269804735, 1.047751624584361, -1.2784353088048066, 0.26901971938503365),
    (1.2902326523886896, 0.620330042093141, 2.273123510429958, 0.20025732502401095, 1.2292107302701339),
    (1.2838594101475422, 0.6701579449396058, -2.623401727553972, 1.150003774463399, -1.2707756545492398),
    (0.6582509033857348, 0.7301098911023978, -1.0494439419872819, -1.696968309977593, 2.8589888150805554),
    (0.36019538783722443, 1.5995246822015343, -0.9574040537019233, 0.2763583636303677, 0.84882413917639570),
    (1.3524443529634538, 1.2592589505373761, 0.370391103944133, 1.643825519240596, 1.6735336727804536),
    (1.3433473402265237, 0.9120208371978948, -2.1717836902853795, 1.0723240259466564, -0.71494938002630381),
    (0.9007534918119859, 1.9831772842058248, -2.4576637954992298, 2.5428108894056827, -0.27710686834352237),
    (0.6933005209145672, 1.8280898555883116, -1.5032499028480109, 0.3818953785178172, 0.66255887893671618),
    (1.3785762337172331, 0.8439311725232251, -0.7575488557142185, 3.047764891202444, -1.4605737043190160),
    (0.7440309543825583, 1.990670934309489, 1.127573477338526, -1.6950652759406077, 0.39926653442262696),
    (1.4396324043436737, 1.1086224890985124, -2.583118557001494, -0.016123274449758362, 1.0852863794577797),
    (1.161177197365747, 1.5270425845734672, -2.5601948779946024, -0.3403434853474314, 1.7433129826141891),
    (1.3031142762851573, 1.8473531113617039, -0.6094196799299603, 3.3856250724291588, 0.0060366026969920096),
    (0.45638694302523974, 1.0943086855120592, 2.9537749310822345, 1.0428897458505757, 57.936098768551381),
    (1.408882084699708, 0.762333486926021, 2.0091355637198625, -1.0341555655137524, -0.36575999502176403),
    (0.3660300581379732, 1.746389083004645, 0.605250028680218, -0.3295562009486126, 0.93271884949939599),
    (0.9259999845704916, 1.0393265419979512, 1.8018821190240004, 3.099980674972426, 108.59543618476201),
    (0.8434295654060835, 1.5044720681384742, 0.4082646753584851, 1.4090388699804768, 2.0041082963414519),
    (0.3437170201805664, 0.7015925068692841, 1.106345401706367, -0.6272371149831883, 0.37207929325770747),
    (1.1184645817573293, 1.6756443689298912, -1.1718380569559228, -1.2058514782479275, 1.9783608063726838),
    (0.7294518249367834, 1.5496584958980573, -0.7243479419196888, -1.2409790002825778, 1.8434529326064153),
    (0.7741692635433906, 1.2991558525062432, 1.4908789871643746, 0.8588526717636737, 3.6819208101582179),
    (1.3731519578091167, 1.9457281731688165, 0.44616126797219113, -3.0612642277488487, 0.67528013107001686),
    (0.6135491127016566, 0.8791215420426242, -0.18815378227581547, -0.03630410132549411, 0.92836946423449669),
    (0.8975581423377497, 1.3703053588507117, 0.5468737230538716, -2.7266217952655625, 0.52245089415988976),
    (1.0830235899820095, 1.628143964136376, -0.02070659985682255, -1.3969072980750576, 1.1299176975242290),
    (1.318193632085953, 0.5436704446482483, -1.7281121692235477, 1.4728907083837726, -1.4783147754618038),
    (1.2436514350781882, 0.8403455496821043, -1.7233602031378537, 2.327897404293936, -1.6853460414649356),
    (0.8278418280362962, 0.9452721209347614, -2.896608058643701, 1.5584320687941107, -0.28046122294080999),
];

/// Randomized evaluation points of the two-parameter reduction (`g = 1`):
/// `(a, b, z, E_{a,b}(z))`, seed 816.
pub const TWO_PARAM_SWEEP: [(f64, f64, f64, f64); 48] = [
    (0.4922176534607988, 0.6603826309477729, -0.708355219445437, 0.31364759066301130),
    (0.40794648570655295, 1.836044244212629, 2.3260002954499583, 1193.9531096561721),
    (0.5308413681143607, 0.9180123016815551, 3.3150027619399944, 32178.828982848063),
    (0.5539262800223148, 1.3449263717520425, 3.615887148479768, 21379.954057618473),
    (0.4436544506817991, 0.7594578535535436, 2.0375862377190304, 479.55691179430331),
    (0.48331146795713686, 0.5592080354069376, -0.10546810583223287, 0.53214692877985152),
    (1.2491322768024502, 0.5543149660893125, -1.0651989441335, -0.095026578183728518),
    (1.417242705406024, 1.2994238605730133, -1.0918125734522492, 0.56324652160807368),
    (0.8278172634124243, 1.7592515431680276, 3.663047517793501, 44.294385818092549),
    (1.0979818502148169, 1.3938046946904823, 1.5669727819709403, 3.3262423752624930),
    (1.107410686644962, 1.6890776189336731, -1.5096576330496472, 0.51617500439902883),
    (0.7388829084977795, 1.2559995408069258, 2.2877823230672973, 21.555483897521466),
    (1.0414033852092408, 0.695082555567994, 0.9379679237063918, 2.5440347773895809),
    (0.571617483957219, 1.345786884788537, 1.939957611610704, 27.931272992613531),
    (0.6792217285266102, 0.8264818437970034, 3.730999254307653, 2146.3651456589723),
    (0.9628480118348683, 1.7860700884722993, -3.036865697646366, 0.29321413545266781),
    (1.2510207172387153, 1.0657599091145629, -3.1260500922743786, -0.029131515619731721),
    (0.3875273970758454, 1.9121212933533416, -0.35481959941980357, 0.79659683745034663),
    (1.3400031080038, 1.1247080834121062, -0.889481479284945, 0.52218071691248439),
    (1.0850842815140758, 0.5522688757800247, 3.920058381687679, 54.864220361327654),
    (0.8163998384801217, 1.8169120858646721, -0.8855728299919035, 0.64987439409065278),
    (1.3255142446349593, 1.6149674938275185, 1.4242102828234486, 2.1634514396446539),
    (0.8693586945837053, 1.1147805114859928, -2.759459738758384, 0.15158352849622981),
    (0.9814874237458149, 1.2664442961009048, -3.556342674688045, 0.12966919400194376),
    (0.987556594715687, 0.8849738924206125, 1.2195488755771358, 3.5688655666203364),
    (0.43726227903199955, 1.625515593994821, 1.1469541383920658, 5.7113919506637708),
    (0.4450573604762648, 1.9556692101177215, -2.0740563321988814, 0.36782231196284490),
    (0.8866018415503054, 0.896944944430826, 2.4300874224257596, 19.032426790480808),
    (0.43277142075432895, 1.5750532018239896, 3.9644146841103014, 10963308184.377501),
    (0.9140696412807576, 1.4964535564387298, 2.385054320657236, 8.8357666933900833),
    (1.321849969787717, 1.9420145075086648, -0.22022412365001287, 0.94211514625862297),
    (1.498836819315656, 0.8319900776953671, -3.5010201864174455, -0.37732636776276525),
    (0.39824000754734085, 0.5192609438484623, -1.142744939649698, 0.16022617237136537),
    (0.7274597893363595, 0.6780148921923785, 0.006860843054384169, 0.75725161986010347),
    (1.3106870112108457, 0.698281938831047, -1.1087153768936657, 0.028130581569211256),
    (0.9346666577020224, 1.661117072199822, -2.8967666315797187, 0.28714393404125778),
    (0.571616694946549, 1.7420042148840955, -2.3135143939583935, 0.35227389448005555),
    (1.1795138251289194, 0.9645678673507738, -1.7886098168330449, 0.097739207467759765),
    (1.391955349724304, 1.0823076190537517, -0.026194272800664997, 1.0231231767869325),
    (1.4562821273045468, 1.6352429039685015, 2.8321444453758193, 3.2891799720210762),
    (0.48329791908882325, 1.0875573543735633, 2.3448067903194127, 604.22386474007701),
    (0.6520461442574583, 1.4873823155860315, -3.2096892616472736, 0.24912648826776976),
    (1.4356750327714043, 0.9804626155547895, -3.8806328178797838, -0.23448861317497189),
    (0.35263943258198216, 1.6163981711119095, 2.2369579124872487, 12608.636607057240),
    (0.3934058302144257, 0.7275711983291913, 1.4490705438049911, 42.664839961083252),
    (0.5689923873947276, 1.9185563029940287, -1.4647913635681888, 0.47155122230362615),
    (1.3091415995158713, 0.9299766460175557, 1.518121105136454, 3.1804750751347517),
    (0.9033283353865083, 1.305658786623849, 2.948329725433447, 20.896512209836543),
];

/// Series evaluation outcome of [`prabhakar_series_oracle`].
pub struct OracleEval {
    /// Value of the sum.
    pub value: f64,
    /// Sum of the absolute terms; `abs_sum / |value|` is the condition
    /// number of the summation, which scales the achievable accuracy.
    pub abs_sum: f64,
}

/// Straight Kahan summation of `sum_m (g)_m z^m / (Gamma(a m + b) m!)`
/// built exclusively on statrs primitives, sharing no code with the crate:
/// the rising factorial is carried in log space with an explicit sign, and
/// each term is assembled as `exp(ln|(g)_m| + m ln|z| - lnGamma(am+b)
/// - lnGamma(m+1))`.
pub fn prabhakar_series_oracle(a: f64, b: f64, g: f64, z: f64) -> OracleEval {
    use statrs::function::gamma::ln_gamma;

    assert!(a > 0.0 && b > 0.0, "oracle requires a > 0, b > 0");
    if z == 0.0 {
        let value = (-ln_gamma(b)).exp();
        return OracleEval {
            value,
            abs_sum: value.abs(),
        };
    }

    let ln_abs_z = z.abs().ln();
    let neg_z = z < 0.0;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut ln_rising = 0.0f64; // ln |(g)_m|
    let mut rising_sign = 1.0f64;
    let mut tail_run = 0usize;

    for m in 0..600usize {
        let mf = m as f64;
        let magnitude =
            (ln_rising + mf * ln_abs_z - ln_gamma(a * mf + b) - ln_gamma(mf + 1.0)).exp();
        let sign = if neg_z && m % 2 == 1 { -rising_sign } else { rising_sign };
        let term = sign * magnitude;

        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_sum += magnitude;

        if magnitude < 1e-17 * sum.abs().max(1.0) {
            tail_run += 1;
            if tail_run >= 4 && m >= 10 {
                return OracleEval {
                    value: sum,
                    abs_sum,
                };
            }
        } else {
            tail_run = 0;
        }

        let next = g + mf;
        if next == 0.0 {
            // (g)_{m+1} = 0: the series is the polynomial already summed.
            return OracleEval {
                value: sum,
                abs_sum,
            };
        }
        ln_rising += next.abs().ln();
        if next < 0.0 {
            rising_sign = -rising_sign;
        }
    }

    panic!("oracle series did not converge for a={a}, b={b}, g={g}, z={z}");
}
