"""Deterministic demo corpus and artifact builder.

The bundled corpus is small but statistically engineered: every block of
documents is written so the mined knowledge base comes out with known
entries, known rejections, and known score distributions — a mountain term
dominated by one district, a lake tied to a city whose districts never
appear (so nothing can be inferred below it), a ubiquitous bank brand spread
uniformly over five cities (rejected with entropy exactly ln 5), a landmark
whose district outranks its own city only after parent reweighting, and a
set of deliberately diffuse regional words that survive only as embedding
vocabulary. ``build_all`` runs the real extract → train → mine pipeline over
it and writes every artifact the CLI needs.

Also here: the synthetic clustering corpus (provinces of co-occurring
divisions) and the large synthetic news corpus for throughput benchmarks.
Everything is seeded; none of it changes between runs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .embeddings import TrainConfig, save_embeddings, train
from .gazetteer import AdPath, bundled_gazetteer_path, load_gazetteer
from .pipeline import save_corpus
from .roi import RoiThresholds, build_roi, save_roi
from .sequences import (
    LexiconRecognizer,
    extract_sequences,
    load_geo_lexicon,
    save_sequences,
)
from .textscan import Document


def default_gazetteer_path() -> Path:
    return bundled_gazetteer_path()


def default_lexicon_path() -> Path:
    return Path(str(resources.files("locnorm").joinpath("data/geo_lexicon.txt")))


# Training setup tuned for the bundled corpus: ~50 vocabulary tokens over a
# few hundred co-occurrence pairs needs a small dense space and a few extra
# epochs to give stable neighborhoods at a fixed seed.
FIXTURE_TRAIN_CONFIG = TrainConfig(dim=32, window=5, epochs=15, seed=42)

# Each block is (doc_id prefix, texts). The per-block co-occurrence counts
# are load-bearing; tests pin them exactly, so edits here must keep every
# mention count and every document frequency intact.
_BLOCKS: tuple[tuple[str, tuple[str, ...]], ...] = (
    # 梧桐山 — 盐田区 11, 深圳市 6, 广东省 2 (entropy ≈ 0.914, kept, depth 3)
    (
        "wts",
        (
            "这个周末和朋友们爬了梧桐山，在山顶远远望见盐田区的海岸线，盐田区的天气比想象中凉快。",
            "从梧桐山下来之后顺路去了大梅沙，傍晚的盐田区游人不少。",
            "盐田区的志愿者在梧桐山捡了一上午垃圾，下午还顺路去了大梅沙。",
            "第一次夜爬梧桐山，盐田区的灯光从山脚一直铺到海边，盐田区的夜景没让人失望。",
            "梧桐山的毛棉杜鹃开了，盐田区的摄影爱好者一早就上了山，盐田区的停车场很快就满了。",
            "住在盐田区的表姐说，她家阳台正对着梧桐山的主峰，盐田区的空气里都是海味。",
            "跑友圈这周的活动定在梧桐山，集合点设在盐田区的体育馆门口，盐田区的地铁口有接驳车。",
            "台风过后的梧桐山步道重新开放了，盐田区发布了登山提示，提醒大家顺路去大梅沙的时候注意退潮时间。",
            "公司团建选了梧桐山，下山后在盐田区的海鲜街聚餐，最后在大梅沙看了日落。",
            "梧桐山的溪谷线路有点险，盐田区的救援队这个月出动了两次，盐田区的公告建议大家走成熟步道。",
            "骑车环线经过梧桐山隧道口的时候，盐田区方向的车流明显多了起来，盐田区的周末总是这样。",
            "听说梧桐山是深圳的最高峰，深圳的登山爱好者都把它当成必修课。",
            "来了深圳先去看世界之窗，第二天一早出发去爬梧桐山。",
            "深圳的朋友推荐了两条路线，一条去梧桐山看日出，另一条去世界之窗看夜场。",
            "梧桐山顶起了云海，深圳的无人机爱好者拍到了全过程，深圳的本地论坛都在转发。",
            "实习的时候住在深圳，宿舍窗外就是梧桐山，深圳的雨季里它总是裹着雾。",
            "深圳的地铁新线开通后，去梧桐山登山口不用再转公交了，深圳的山友群都炸了锅。",
            "梧桐山的杜鹃花季引来了广东各地的游客，广东的春天总是来得早。",
            "纪录片镜头里的梧桐山云雾缭绕，解说词说这是广东的绿色名片，广东的观众看得很自豪。",
        ),
    ),
    # 泸沽湖 — 丽江市 11, 云南省 3 (kept, depth 2; 丽江市的区县从不出现，
    # 所以推断阶段无法补出第三级)
    (
        "lgh",
        (
            "从丽江出发去泸沽湖要走六个小时的盘山公路，丽江的司机说这条路他跑了十年。",
            "泸沽湖的猪槽船要提前预约，丽江的客栈老板帮我们订好了位置，丽江的旺季就是这样。",
            "在丽江休整了一天，第二天一早赶往泸沽湖，丽江的清晨还带着凉意。",
            "泸沽湖的星空比照片里还要亮，同行的丽江向导说冬天更清楚，丽江的摄影团常驻湖边。",
            "丽江的雨下了三天，去泸沽湖的班车一直停运，丽江的车站挤满了等消息的游客。",
            "泸沽湖的环湖骑行一共七十多公里，丽江过来的骑友组了个小队，丽江的租车行生意很好。",
            "听丽江的民宿管家讲泸沽湖的走婚桥传说，丽江的夜晚适合听故事。",
            "泸沽湖的湖水蓝得不像话，丽江的朋友说秋天的颜色才是巅峰，丽江的四季各有各的好。",
            "自驾从丽江到泸沽湖，一路的观景台都值得停，丽江的落日追着车走。",
            "泸沽湖的里格半岛住了两晚，回丽江的路上还在回味，丽江的小馆子抚慰了疲惫。",
            "丽江的海拔让人有点喘，到了泸沽湖反而适应了，丽江的药店老板说这很常见。",
            "泸沽湖的清晨有雾，湖边的客栈老板说云南的雨季刚过，云南的这个时节最舒服。",
            "纪录片把泸沽湖拍成了云南的名片，云南的旅游部门顺势推了新线路。",
            "第一次来云南就直奔泸沽湖，朋友说云南的湖泊各有性格。",
        ),
    ),
    # 成都双流国际机场 — 双流区 9, 成都市 4, 四川省 1 (kept, depth 3)
    (
        "shl",
        (
            "航班降落在成都双流国际机场的时候正好是傍晚，双流区的出租车排起了长队，双流区的夜宵店都还开着。",
            "成都双流国际机场的新航站楼启用了，双流区的公交专线同步调整，双流区的通告发得很及时。",
            "凌晨到达成都双流国际机场，双流区的网约车师傅十分钟就到了，双流区的夜里比想象中安静。",
            "成都双流国际机场今天因大雾延误了一批航班，双流区的机场大巴临时加密了班次，双流区的旅客大多选择了改签。",
            "在成都双流国际机场的到达口等人，双流区的地勤小哥指了条近路，双流区的指示牌确实清楚。",
            "成都双流国际机场的免税店新开了一层，双流区的白领下班都去逛，双流区的商圈热闹了不少。",
            "从成都双流国际机场出发的红眼航班越来越多，双流区的酒店推出了凌晨接送，双流区的司机也调整了作息。",
            "成都双流国际机场的跑道检修结束了，双流区的噪音投诉少了很多，双流区的居民终于睡了个好觉。",
            "摄影爱好者聚在成都双流国际机场外的观景坡拍飞机，双流区划了专门的拍摄区域，双流区的做法被大家点了赞。",
            "成都的地铁可以直达成都双流国际机场，成都的旅客赶早班机方便了很多。",
            "出差到成都的第一站就是成都双流国际机场的高铁换乘站，成都的交通衔接做得不错。",
            "成都的美食攻略从落地就开始了，成都双流国际机场里就有老字号分店，成都的味道先尝为快。",
            "朋友第一次来成都，我把接机地点定在了成都双流国际机场的二号口，成都的晚高峰不好约车。",
            "四川的第一场雪下来的时候，成都双流国际机场加开了除冰作业，四川的航线没有受到影响。",
        ),
    ),
    # 十陵立交 — 龙泉驿区 6, 成都市 2
    (
        "slj",
        (
            "早高峰的十陵立交又堵上了，龙泉驿区的交管部门到现场疏导，龙泉驿区的司机们已经习惯了。",
            "十陵立交的匝道改造下周开工，龙泉驿区发布了绕行方案，龙泉驿区的公交也调整了线路。",
            "夜跑路线正好经过十陵立交的桥下，龙泉驿区的灯光工程让这里亮了不少，龙泉驿区的跑友都说安全感强了。",
            "十陵立交旁边的批发市场搬迁了，龙泉驿区给商户留足了过渡期，龙泉驿区的安置点也公布了。",
            "骑行导航把我带上了十陵立交的辅道，龙泉驿区的骑友提醒我这里货车多，龙泉驿区的新辅道下个月启用。",
            "十陵立交的樱花是意外之喜，龙泉驿区的园林部门补种了两排，龙泉驿区的春天有了新去处。",
            "成都的朋友说十陵立交附近新开了家书店，成都人的周末又多了个去处。",
            "导航显示从成都的东边进城要经过十陵立交，成都的晚高峰在这里最明显。",
        ),
    ),
    # 湖北经济学院 — 武汉市 8, 湖北省 2 (kept, depth 2; 武汉的城区不出现)
    (
        "hbe",
        (
            "湖北经济学院的新生报到那天，武汉下了一整天的雨，武汉的出租车都调去了火车站。",
            "武汉的大学生创业大赛落幕了，湖北经济学院的团队拿了金奖，武汉的媒体做了专访。",
            "湖北经济学院的樱花没有名气却很好看，武汉的学生们口口相传，武汉的春天不止一处花海。",
            "地铁新站离湖北经济学院只有一站路，武汉的通勤族羡慕坏了，武汉的高校圈都在讨论。",
            "湖北经济学院的食堂上了热搜，武汉的吃货跨城去打卡，武汉的物价让外地人惊讶。",
            "考研自习室凌晨还亮着灯，湖北经济学院的保安早就见怪不怪，武汉的冬天挡不住用功的人，武汉的考生都这么拼。",
            "校友返校日那天，湖北经济学院的操场摆满了帐篷，武汉的天气给足了面子，武汉的老校友聊到天黑。",
            "湖北经济学院的双选会来了三百家企业，武汉的就业市场回暖了，武汉的毕业生底气更足。",
            "湖北的高校联赛下周开幕，湖北经济学院的球队第一个出场，湖北的球迷已经开始买票。",
            "湖北的暴雨预警解除后，湖北经济学院恢复了线下上课，湖北的其他高校也陆续复课。",
        ),
    ),
    # 华为基地 — 深圳市 8, 广东省 2 (kept, depth 2)
    (
        "hwj",
        (
            "来深圳出差的同行都想去华为基地看一看，深圳的科技氛围确实名不虚传。",
            "华为基地的班车从早到晚不停歇，深圳的通勤故事里少不了它，深圳的节奏就是这样。",
            "参观华为基地要提前预约，深圳的接待同事反复提醒我们带好证件，深圳的安检效率倒是很高。",
            "深圳的夜景名单里，华为基地的园区灯光榜上有名，深圳的摄影号都拍过它。",
            "华为基地的食堂据说有三十个档口，深圳的美食博主专门做了测评，深圳的网友看饿了。",
            "从深圳的市中心开车到华为基地要一个小时，深圳的同事建议错峰出发。",
            "华为基地的篮球场晚上灯火通明，深圳的加班文化里也有运动的位置，深圳的夜晚很长。",
            "实习生第一天就被带去逛了华为基地，深圳的师兄说这是保留节目，深圳的职场从参观开始。",
            "广东的制造业论坛把参观环节放在了华为基地，广东的企业家组团来学习。",
            "纪录片第三集拍的是华为基地的研发楼，解说词说这里装着广东的雄心，广东的观众与有荣焉。",
        ),
    ),
    # 内蒙古大兴安岭 — 呼和浩特市 7, 内蒙古自治区 2 (kept, depth 2)
    (
        "dxa",
        (
            "呼和浩特的林业代表团去内蒙古大兴安岭考察了一周，呼和浩特的媒体做了整版报道。",
            "从呼和浩特飞过去再转三个小时汽车，才真正进了内蒙古大兴安岭的林区，呼和浩特的向导一路讲个不停。",
            "内蒙古大兴安岭的秋色照片刷屏了，呼和浩特的摄影协会组织了采风团，呼和浩特的报名通道一开就满。",
            "在呼和浩特先看了大召寺，再出发去内蒙古大兴安岭，呼和浩特的行程安排得满满当当。",
            "大召寺的讲解员是呼和浩特本地人，他说内蒙古大兴安岭的冬天才是真正的考验。",
            "呼和浩特的小学组织了自然课堂，孩子们通过直播看内蒙古大兴安岭的驯鹿，呼和浩特的家长也看得入神。",
            "防火季到了，呼和浩特的志愿者转发了内蒙古大兴安岭的护林倡议，呼和浩特的朋友圈一片绿色。",
            "内蒙古的秋天来得早，内蒙古大兴安岭的落叶松一夜全黄了，内蒙古的摄影爱好者背着器材赶了过去。",
            "内蒙古的林草部门发布了生态报告，内蒙古大兴安岭的植被覆盖率又涨了，内蒙古的网友纷纷点赞。",
        ),
    ),
    # 中国银行 — 五个城市各 2，完全均匀，熵恰为 ln 5，必须被拒绝；
    # 这五个城市不得出现在其他任何语块里
    (
        "boc",
        (
            "中国银行的新网点落户珠海的商业街，就在华发广场的正对面。",
            "在华发广场逛街的时候路过中国银行，顺便去珠海的柜台换了外币。",
            "中国银行在贵阳的分行组织员工参观了甲秀楼。",
            "从甲秀楼出来沿着河边走十分钟，就能看到中国银行在贵阳的老办公楼。",
            "中国银行的志愿者在海口的假日海滩组织了清滩活动。",
            "假日海滩的游客中心旁边新开了中国银行的自助网点，海口的市民都说方便。",
            "中国银行的招聘宣讲会开进了合肥的校园，不少学生听完顺路去逍遥津散了步。",
            "在逍遥津晨练的大爷说他在中国银行干了三十年，合肥的变化他都记得。",
            "中国银行的老员工讲起天津的往事，总会提到瓷房子旁边的那家老网点。",
            "瓷房子门口排着长队，对面中国银行的大楼是天津有名的老建筑。",
        ),
    ),
    # 白云山 / 骑楼街 / 荔枝湾 — 故意摊在广州、深圳、佛山、广东省四个锚点上，
    # 熵超过阈值被拒绝，但留在词表里供嵌入推断使用
    (
        "gdw",
        (
            "广州的清晨从白云山的缆车开始，下山后去荔枝湾吃了一碗艇仔粥。",
            "广州的骑楼街在雨后特别好看，拐个弯就能走到荔枝湾的水边。",
            "白云山的索道今天排长队，广州的本地人建议走西门上山，广州的天气热得快。",
            "骑楼街的老字号换了新招牌，广州的街坊舍不得旧样子，荔枝湾的游船倒是一直没变。",
            "从白云山顶看下去，广州的高楼连成一片，骑楼街的方向藏在老城里。",
            "荔枝湾的夜景配上广州的晚风，广州的夏天就该这么过。",
            "白云山的步道重新修整过，广州的跑团把周末活动定在了这里，广州的天光说亮就亮。",
            "骑楼街拍照的最佳时间是清晨，广州的摄影师都懂这个秘密，荔枝湾也是一样的道理。",
            "深圳的同事第一次来看白云山，说比想象中大得多，深圳的山头确实都不高。",
            "白云山下的民宿老板以前在深圳开过店，聊起骑楼街的老房子头头是道。",
            "从深圳过来的高铁很快，放下行李先去了荔枝湾，晚上再去骑楼街觅食。",
            "荔枝湾的讲解员说，不少深圳的游客专程为这片水而来，深圳的周末高铁票都要抢。",
            "佛山的朋友约我们爬白云山，回程顺路在骑楼街吃了双皮奶。",
            "白云山的晨雾散得快，佛山来的登山队赶上了日出，佛山的领队拍了全程视频。",
            "骑楼街的粤剧演出请来了佛山的名角，荔枝湾的戏台下周也排了一场。",
            "佛山的龙舟队在荔枝湾训练过一个夏天，白云山的步道他们也常去拉练。",
            "广东的雨说下就下，白云山的游客躲进了亭子，骑楼街的屋檐下站满了人。",
            "纪录片把广东的早茶拍得很馋人，镜头从荔枝湾一路摇到白云山。",
            "广东的台风过境后，骑楼街最先恢复热闹，荔枝湾的游船第二天也复航了。",
            "白云山入选了广东的十大登山路线，骑楼街和荔枝湾则上了美食榜单。",
        ),
    ),
    # 颐和园 — 北京市 8, 海淀区 2；另有两篇双段文档让北京段的邻段提到海淀，
    # 把重加权概率压到 0.25，使海淀区在重加权后反超北京市
    (
        "yhy",
        (
            "颐和园的长廊修缮完工了，北京的游客排队入园，北京的秋天很适合逛园子。",
            "清晨六点的颐和园只有晨练的人，北京的大爷大妈自成一景，北京的晨光很温柔。",
            "颐和园的十七孔桥到了金光穿洞的季节，北京的摄影圈倾巢出动，北京的冬天也有盼头。",
            "带外地同学逛颐和园，走到腿软也只逛了一半，北京的园子果然大，北京的历史课就该这么上。",
            "颐和园的雪景上了热搜，北京的初雪总是让人兴奋，北京的游客排到了东宫门外。",
            "在颐和园划船要赶早，北京的周末人多船少，北京的家长带着孩子早早来排队。",
            "颐和园西门外新开了公交专线，海淀的乘客可以直达，北京的交通部门发了通告。",
            "颐和园的文创雪糕卖断了货，海淀的学生放学就来排队，北京的文创市场真是火。",
            "北京的初雪来得比往年早，北京的环卫工人连夜上岗，北京的孩子们在小区里堆起了雪人。"
            "中间的故事还有不少。先按下不表。"
            "海淀的中关村大街重新铺了路面，海淀的咖啡馆换了新招牌，海淀的夜晚依然热闹。",
            "北京的马拉松周日开跑，北京的地铁提前了首班车，北京的志愿者凌晨就位。"
            "这些都是后话。另说一件事。"
            "海淀的图书城办了旧书市集，海淀的读者淘到了绝版书，海淀的书香味又回来了。",
        ),
    ),
    # 上海森兰体育公园 — 浦东新区 6, 上海市 2
    (
        "slt",
        (
            "上海森兰体育公园的球场免费开放了，浦东新区的居民晚上都去散步，浦东新区的体育局回应了网友的点赞。",
            "在上海森兰体育公园看了一场业余联赛，浦东新区的球队踢得有模有样，浦东新区的啦啦队全是街坊。",
            "上海森兰体育公园的樱花道开了，浦东新区的白领中午来走一圈，浦东新区的春天藏在园子里。",
            "夜跑族把主场定在了上海森兰体育公园，浦东新区的夜晚因此热闹，浦东新区的路灯也加密了。",
            "上海森兰体育公园的风筝节是保留节目，浦东新区的天空躺满了风筝，浦东新区的孩子们仰着头跑。",
            "健身博主测评了上海森兰体育公园的智能步道，浦东新区的科技感拉满，浦东新区的大爷也学会了扫码。",
            "上海的梅雨季结束了，上海森兰体育公园的草坪重新开放，上海的阳光终于舍得露面。",
            "上海的市民运动会分会场设在上海森兰体育公园，上海的周末多了个好去处。",
        ),
    ),
    # 胡杨林景区 — 尉犁县 2, 巴音郭楞蒙古自治州 1
    (
        "hyl",
        (
            "尉犁县的胡杨林景区进入最佳观赏期，尉犁县的文旅部门增开了摆渡车。",
            "十月的尉犁县一片金黄，胡杨林景区的栈道上全是拍照的人，尉犁县的民宿提前一个月就订满了。",
            "巴音郭楞蒙古自治州的向导带我们进了胡杨林景区，巴州的秋色让人挪不开眼。",
        ),
    ),
)


def fixture_corpus() -> list[Document]:
    """The bundled training corpus, one Document per designed text."""
    return [
        Document(f"{prefix}{i:02d}", text)
        for prefix, texts in _BLOCKS
        for i, text in enumerate(texts, start=1)
    ]


@dataclass(frozen=True, slots=True)
class QueryCase:
    doc_id: str
    text: str
    gold: tuple[str | None, str | None, str | None]


QUERY_CASES: tuple[QueryCase, ...] = (
    QueryCase(
        "q-yuli",
        "尉犁县的胡杨林景区进入最佳观赏期，巴音郭楞蒙古自治州文旅部门提醒游客错峰出行。",
        ("新疆", "巴音郭楞蒙古自治州", "尉犁县"),
    ),
    QueryCase(
        "q-chaoyang",
        "北京的朝阳区这几年新开了不少美术馆。",
        ("北京市", "北京市", "朝阳区"),
    ),
    QueryCase(
        "q-wutongshan",
        "周末约了朋友去爬梧桐山，记得带足水和干粮。",
        ("广东省", "深圳市", "盐田区"),
    ),
    QueryCase(
        "q-lugu",
        "手机根本拍不出泸沽湖的美，只能亲眼去看。",
        ("云南省", "丽江市", None),
    ),
    QueryCase(
        "q-shuangliu",
        "四川航空的新航线今天从成都双流国际机场首飞，成都的旅客以后去海口更方便了，四川的机票价格也降了。",
        ("四川省", "成都市", "双流区"),
    ),
    QueryCase(
        "q-huawei",
        "下午去华为基地的访客中心参观，记得提前预约。",
        ("广东省", "深圳市", None),
    ),
    QueryCase(
        "q-hbue",
        "湖北经济学院的图书馆暑假照常开放。",
        ("湖北省", "武汉市", None),
    ),
    QueryCase(
        "q-xiangfan",
        "襄樊的谷城县下了今年的第一场雪。",
        ("湖北省", "襄阳市", "谷城县"),
    ),
    QueryCase(
        "q-guangdong",
        "广东的白云山和荔枝湾都值得去，骑楼街也不要错过。",
        ("广东省", None, None),
    ),
    QueryCase(
        "q-listing",
        "上海的森兰体育公园将举办音乐节。北京、上海、深圳、重庆、贵阳等地的歌迷已经开始订票。",
        ("上海市", "上海市", None),
    ),
    QueryCase(
        "q-yiheyuan",
        "带爸妈逛了颐和园，走了一整天。",
        ("北京市", "北京市", "海淀区"),
    ),
    QueryCase("q-empty", "", (None, None, None)),
    QueryCase("q-nohit", "今天的天气很适合在家读书。", (None, None, None)),
)


def query_documents() -> list[Document]:
    return [Document(c.doc_id, c.text) for c in QUERY_CASES]


def gold_paths() -> dict[str, AdPath]:
    return {c.doc_id: AdPath(c.gold, (None, None, None)) for c in QUERY_CASES}


# ---------------------------------------------------------------------------
# Synthetic corpora for clustering evaluation and throughput benchmarks
# ---------------------------------------------------------------------------


def make_cluster_sequences(
    provinces: int = 4,
    divisions: int = 10,
    per_province: int = 40,
    length: int = 5,
    seed: int = 0,
) -> tuple[list[list[str]], dict[str, int]]:
    """Province-local token sequences plus the true division → province map.

    Each sequence mixes one province token with a sample of its own
    divisions, so embeddings of same-province divisions end up co-located.
    """
    rng = random.Random(seed)
    labels: dict[str, int] = {}
    sequences: list[list[str]] = []
    for p in range(provinces):
        division_tokens = [f"省{p}区{d:02d}" for d in range(divisions)]
        for tok in division_tokens:
            labels[tok] = p
        for _ in range(per_province):
            seq = rng.sample(division_tokens, k=min(length, divisions))
            seq.insert(rng.randrange(len(seq) + 1), f"省{p}")
            sequences.append(seq)
    return sequences, labels


_BENCH_FILLERS = (
    "记者在现场看到人流逐渐散去",
    "相关部门表示将持续跟进",
    "网友的讨论一直持续到深夜",
    "具体安排以官方通告为准",
    "业内人士认为这只是开始",
    "现场的气氛比预想的热烈",
    "后续进展我们将继续关注",
    "参与的市民纷纷表示支持",
    "这份名单引发了不小的争论",
    "活动的报名通道今晚开启",
)

_BENCH_TEMPLATES = (
    "{ad}的新闻发布会在今天上午举行，{filler}。",
    "{geo}的改造工程进入收尾阶段，{ad}的居民期待了很久，{filler}。",
    "{ad}发布了最新的交通提示，提醒前往{geo}的游客提前规划，{filler}。",
    "上周的展演活动落地{ad}，主办方称效果超出预期，{filler}。",
    "{geo}今天迎来了今年最大的客流，{filler}，{ad}的志愿者全员上岗。",
    "{ad}的气象台发布了明晨的大雾预警，{filler}。",
    "从{ad}出发的旅游专线新增了两个班次，途经{geo}，{filler}。",
    "{ad}与{ad2}的合作项目昨天签约，{filler}。",
)


def make_bench_corpus(
    target_bytes: int = 10 * 2**20, seed: int = 7
) -> list[Document]:
    """A synthetic news corpus of roughly ``target_bytes`` UTF-8 bytes."""
    gaz = load_gazetteer(default_gazetteer_path())
    ad_pool = sorted({rec.name for rec in gaz})
    geo_pool = sorted(load_geo_lexicon(default_lexicon_path()))
    rng = random.Random(seed)

    docs: list[Document] = []
    total = 0
    n = 0
    while total < target_bytes:
        sentences = []
        for _ in range(rng.randint(2, 5)):
            tpl = rng.choice(_BENCH_TEMPLATES)
            sentences.append(
                tpl.format(
                    ad=rng.choice(ad_pool),
                    ad2=rng.choice(ad_pool),
                    geo=rng.choice(geo_pool),
                    filler=rng.choice(_BENCH_FILLERS),
                )
            )
        text = "".join(sentences)
        docs.append(Document(f"bench{n:06d}", text))
        total += len(text.encode("utf-8"))
        n += 1
    return docs


# ---------------------------------------------------------------------------
# One-shot artifact builder
# ---------------------------------------------------------------------------


def build_all(
    out_dir: str | Path,
    train_config: TrainConfig = FIXTURE_TRAIN_CONFIG,
    thresholds: RoiThresholds = RoiThresholds(),
) -> dict[str, Path]:
    """Run extract → train → mine over the bundled corpus; write artifacts.

    Returns the path of every file written. Output is byte-deterministic for
    a fixed configuration.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    gaz = load_gazetteer(default_gazetteer_path())
    lexicon = load_geo_lexicon(default_lexicon_path())

    corpus = fixture_corpus()
    paths = {"corpus": out / "corpus.jsonl"}
    save_corpus(corpus, paths["corpus"])

    recognizer = LexiconRecognizer(lexicon)
    seqs = extract_sequences(corpus, gaz, recognizer)
    paths["sequences"] = out / "sequences.jsonl"
    save_sequences(seqs, paths["sequences"])

    table = train(seqs, train_config)
    paths["embeddings"] = out / "embeddings.txt"
    save_embeddings(table, paths["embeddings"])

    store = build_roi(seqs, gaz, thresholds)
    paths["roi"] = out / "roi.jsonl"
    save_roi(store, paths["roi"])

    paths["queries"] = out / "queries.jsonl"
    save_corpus(query_documents(), paths["queries"])
    paths["gold"] = out / "gold.jsonl"
    with open(paths["gold"], "w", encoding="utf-8") as fh:
        for case in QUERY_CASES:
            fh.write(
                json.dumps(
                    {"doc_id": case.doc_id, "path": list(case.gold)},
                    ensure_ascii=False,
                )
                + "\n"
            )
    return paths
