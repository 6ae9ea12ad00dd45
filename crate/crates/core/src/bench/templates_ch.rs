//! Chinese instruction bodies. These are unofficial translations; the seed that
//! follows `*** started ***` is shared with the English template.

pub(super) const STORY_SIMPLE: &str = "请写一部包含{num_section}章的小说。每一章都应围绕一个主题或情节展开，每章不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}章完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const DIALOGUE_SIMPLE: &str = "请生成{num_section}轮顾客与客服之间的对话。每一轮应包括顾客的问题和客服代表的回答，每轮不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}轮对话完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const DIARY_SIMPLE: &str = "请为Jeff写{num_section}天的日记。每篇日记应包括日期和内容的简要描述，每篇不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}篇日记完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const ARCHITECTURE_SIMPLE: &str = "请设计一栋{num_section}层的建筑。描述每一层的功能或布局，每层不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}层完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const STORY_COMPLEX: &str = "请写一部关于Jeff的奇幻小说，共{num_section}章。小说应有清晰的主题和结构，人物在情节中经历多次转折和个人成长。每一章应描写主要人物的行动、想法和情感发展，同时融入相关的背景信息（如历史背景、社会环境等）。每章约{word_section}字，要有足够的细节和情感深度来吸引读者。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}章完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。不要输出其他字符来停止。";

pub(super) const DIARY_COMPLEX: &str = "请写{num_section}天的日记。你的名字是Jeff，一名白领。每篇日记可以包括当天的心情、关键事件、遇到的挑战、解决办法以及对未来的希望或反思。确保每篇日记表达不同的情绪，反映不同的生活事件和成长经历。日记内容可以涵盖工作、家庭、朋友、健康和旅行等多种生活场景。每篇约{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}篇完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。不要输出其他字符来停止。";

pub(super) const DIALOGUE_COMPLEX: &str = "请生成{num_section}轮顾客与客服之间的对话。每一轮对话应包括顾客的问题、客服代表的回答以及服务建议或解决方案。这些对话可以涵盖多个行业和场景，每轮对话互不相连，场景可以切换，例如电子产品支持、旅行预订、金融服务和客户投诉处理。每一轮应体现不同的情绪变化，顾客可能表现出焦虑、困惑、愤怒或高兴等情绪，客服的回应应根据顾客的情绪状态给予适当的安抚、解释或解决方案。每轮对话不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}轮对话完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。不要输出其他字符来停止。";

pub(super) const ARCHITECTURE_COMPLEX: &str = "请设计一栋{num_section}层的办公与居住混合用途摩天大楼。描述每一层的功能或布局。每层应有不同的功能和设计，并与其他楼层紧密相连。包括对办公区、商业空间、住宅区以及娱乐休闲区的详细描述。内容应有足够的细节和深度，例如设计理念、布局和独特元素（如楼层装饰风格、空间利用和智能技术应用），以呈现一栋多功能建筑。每层的描述不少于{word_section}字。确保整篇文档叙述清晰连贯，没有任何中断或遗漏。在全部{num_section}层完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。不要输出其他字符来停止。";

pub(super) const CODE_FUNCTION_SIMPLE: &str = "请生成一个包含{num_section}个不同函数的完整函数库。每个函数应包括函数名、参数、返回类型和函数注释，使用Python格式。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个函数完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const USER_INFO_SIMPLE: &str = "请生成{num_section}个虚拟用户档案，每个用户的信息包括姓名、年龄、性别、地址、电子邮件和电话号码，使用JSON格式。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个档案完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const COMPANY_INFO_SIMPLE: &str = "请生成{num_section}个虚拟公司档案。每个档案应包括公司名称、行业、成立年份、公司地址和联系电话，使用JSON格式。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个虚拟公司档案完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const MATH_FORMULA_SIMPLE: &str = "请生成{num_section}个数学公式，使用LaTeX格式。每个公式前应有一条简短的注释解释该公式。公式应包含在\\begin{equation}和\\end{equation}之间。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个数学公式完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const CODE_FUNCTION_COMPLEX: &str = "请生成一个包含{num_section}个难度各异的Python函数库。函数应从简单的数学运算到更复杂的数据处理、字符串操作、机器学习模型训练和评估函数。每个函数应包括函数名、参数、返回类型、实现和详细注释。注释应说明函数的用途和用法，并包括输入输出示例和边界情况。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个Python函数完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const USER_INFO_COMPLEX: &str = "请以Json格式生成{num_section}个虚拟用户档案。每个档案应包括用户的姓名、年龄、性别、地址、电子邮件、电话号码、职业、爱好、教育程度、婚姻状况、子女数量、工作经历和个人理念。各字段应体现合理的多样性，“个人理念”和“工作经历”等字段应包含简短的背景故事或描述。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个虚拟用户档案完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const COMPANY_INFO_COMPLEX: &str = "请以Json格式生成{num_section}个虚拟公司档案。每个档案应包括公司名称、行业、成立年份、公司地址、联系电话、员工人数、主要产品或服务、公司简介、商业模式、年收入、市场定位、竞争优势和近期发展。确保每家公司都有独特的商业模式，并详细描述其背景、理念和创新。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个虚拟公司档案完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";

pub(super) const MATH_FORMULA_COMPLEX: &str = "请以LaTeX格式生成{num_section}个数学公式，难度从简单到复杂递增。每个公式前应有一条简短的注释解释其含义或应用。从基本代数公式开始，然后过渡到微积分、线性代数、概率论等领域中更复杂的公式。每个公式应包含在\\begin{equation}和\\end{equation}之间。确保整篇文档清晰连贯，没有任何中断或遗漏。在全部{num_section}个数学公式完成之前不要停止生成内容，并使用'*** finished ***'标明文档结束。";
