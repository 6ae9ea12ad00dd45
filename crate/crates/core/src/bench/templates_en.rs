//! English instruction templates. `{num_section}` and `{word_section}` are the placeholders.

pub(super) const STORY_SIMPLE: &str = r##"Please write a novel consisting of {num_section} chapters. Each chapter should revolve around a theme or plot, with a minimum of {word_section} words for each chapter. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} chapters are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

#*# Title:"##;

pub(super) const DIALOGUE_SIMPLE: &str = r##"Please generate {num_section} rounds of dialogue between customers and customer service. Each round should include a customer's question and a customer service representative's response, with a minimum of {word_section} words for each round. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} rounds of dialogue are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

#*# Round 1:
customers:"##;

pub(super) const DIARY_SIMPLE: &str = r##"Please write a diary for {num_section} days for Jeff. Each entry should include the date and a brief description of the content, with a minimum of {word_section} words for each entry. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} diaries are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

#*# Date: Day 1:"##;

pub(super) const ARCHITECTURE_SIMPLE: &str = r##"Please design a {num_section}-story building. Describe the function or layout of each floor, with at least {word_section} words for each layer. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} floors are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

#*# Floor 1:"##;

pub(super) const STORY_COMPLEX: &str = r##"Please write a fantasy novel with {num_section} chapters about Jeff. The novel should have a clear theme and structure, with characters experiencing multiple twists and personal growth throughout the plot. Each chapter should describe the main characters' actions, thoughts, and emotional development, while also incorporating relevant background information (such as historical context, social environment, etc.). Each chapter should be around {word_section} words, with enough detail and emotional depth to keep the reader engaged. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} chapters are completed and '*** finished ***' is used to indicate the end of the document. Do not output other characters to stop.

*** started ***

#*# Chapter1:"##;

pub(super) const DIARY_COMPLEX: &str = r##"Please write a diary for {num_section} days. Your name is Jeff, a white-collar worker. Each entry can include aspects such as your mood for the day, key events, challenges faced, solutions, and hopes or reflections for the future. Ensure that each diary entry expresses different emotions and reflects various life events and growth experiences. The diary content can cover a range of life scenarios, such as work, family, friends, health, and travel. Each entry should be around {word_section} words. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} chapters are completed and '*** finished ***' is used to indicate the end of the document. Do not output other characters to stop.

*** started ***

#*# Date: Day 1"##;

pub(super) const DIALOGUE_COMPLEX: &str = r##"Please generate {num_section} rounds of dialogue between customers and customer service. Each round of dialogue should include the customer's question and the customer service representative's response, along with service recommendations or solutions. These dialogues can cover multiple industries and scenarios, with each turn of conversation being non-contiguous and the scenes able to switch, such as in electronic product support, travel booking, financial services, and customer complaint handling. Each round should reflect different emotional changes, with the customer possibly exhibiting emotions like anxiety, confusion, anger, or happiness, while the customer service responses should appropriately provide reassurance, explanations, or solutions based on the customer's emotional state. Each round of dialogue should contain at least {word_section} words. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} rounds of dialogue are completed and '*** finished ***' is used to indicate the end of the document. Do not output other characters to stop.

*** started ***

#*# Round 1
 Customer:"##;

pub(super) const ARCHITECTURE_COMPLEX: &str = r##"Please design a {num_section}-story mixed-use skyscraper for work and living. Describe the function or layout of each floor. Each floor should have a different function and design, closely connected to other floors. Include detailed descriptions of office areas, commercial spaces, residential areas, and entertainment and leisure zones. The content should have sufficient detail and depth, such as design concepts, layouts, and unique elements (like floor decoration styles, space utilization, and the application of smart technology) to present a multifunctional building. Each floor's description should be at least {word_section} words. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} floors are completed and '*** finished ***' is used to indicate the end of the document. Do not output other characters to stop.

*** started ***

#*# Floor 1:"##;

pub(super) const CODE_FUNCTION_SIMPLE: &str = r##"Please generate a complete library of {num_section} different functions. Each function should include the function name, parameters, return type, and function comments, formatted in Python. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} functions are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

# Function 1: Calculate the area of a circle, given the radius
def calculate_area(radius):
    """
    This function calculates the area of a circle given its radius.
    Parameters:
        radius (float): The radius of the circle.
    Returns:
        float: The area of the circle.
    """
    return 3.14159 * radius ** 2"##;

pub(super) const USER_INFO_SIMPLE: &str = r##"Please generate {num_section} virtual user profiles, with each user's information including name, age, gender, address, email, and phone number, formatted as JSON. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} profiles are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

[{
  "index": 1,
  "name": "John Doe",
  "age": 30,
  "gender": "Male",
  "address": "1234 Elm Street, Springfield, IL, 62701",
  "email": "johndoe@example.com",
  "phone": "+1-555-123-4567"
}]"##;

pub(super) const COMPANY_INFO_SIMPLE: &str = r##"Please generate {num_section} virtual company profiles. Each profile should include the company name, industry, year of establishment, company address, and contact number, formatted in JSON. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} virtual company profiles are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

[{
  "index": 1,
  "company_name": "Tech Innovations Inc.",
  "industry": "Technology",
  "year_established": 2015,
  "company_address": "4567 Silicon Valley, San Jose, CA, 95110",
  "contact_number": "+1-800-234-5678"
}]"##;

pub(super) const MATH_FORMULA_SIMPLE: &str = r##"Please generate {num_section} mathematical formulas, formatted in LaTeX. Each formula should be preceded by a brief comment explaining the formula. The formula should be enclosed in \begin{equation} and \end{equation}. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} mathematical formulas are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

% Formula 1: Energy-mass equivalence: E=mc^2, where energy is equal to mass multiplied by the square of the speed of light
\begin{equation}
E = mc^2
\end{equation}"##;

pub(super) const CODE_FUNCTION_COMPLEX: &str = r##"Please generate a library of {num_section} Python functions with varying levels of difficulty. The functions should range from simple mathematical operations to more complex data processing, string manipulations, machine learning model training, and evaluation functions. Each function should include the function name, parameters, return type, implementation, and detailed comments. The comments should describe the function's purpose, usage, and include input/output examples and edge cases. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} Python functions are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

# Function 1: Add two numbers
def add(a, b):
    """
    This function adds two numbers together.
    Parameters:
        a (int/float): The first number.
        b (int/float): The second number.
    Returns:
        int/float: The sum of the two numbers.
    Example input:
        add(3, 4)
    Example output:
        7
    """
    return a + b"##;

pub(super) const USER_INFO_COMPLEX: &str = r##"Please generate {num_section} virtual user profiles in Json format. Each profile should include the user’s name, age, gender, address, email, phone number, occupation, hobbies, education, marital status, number of children, work experience, and personal philosophy. Each field should reflect reasonable diversity, and some fields like "personal philosophy" and "work experience" should include short background stories or brief descriptions. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} virtual user profiles are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

[{
  "index": 1,
  "name": "Emily Davis",
  "age": 30,
  "gender": "Female",
  "address": "789 Elm Street, San Francisco, CA, USA",
  "email": "emily.davis@example.com",
  "phone": "+1-415-555-0123",
  "occupation": "Marketing Manager",
  "hobbies": ["Yoga", "Hiking", "Cooking"],
  "education": "Bachelor's",
  "marital_status": "Married",
  "children": 2,
  "work_experience": "7 years of experience in digital marketing and brand management.",
  "personal_philosophy": "I believe in creating meaningful connections and making a positive impact."
}]"##;

pub(super) const COMPANY_INFO_COMPLEX: &str = r##"Please generate {num_section} virtual company profiles in Json format. Each profile should include the company name, industry, year of establishment, company address, contact number, number of employees, main products or services, company bio, business model, annual revenue, market positioning, competitive advantage, and recent developments. Ensure that each company has a unique business model and a detailed description of its background, philosophy, and innovation. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} virtual company profiles are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

[{
  "index": 1,
  "company_name": "Innovative Tech Solutions, Inc.",
  "industry": "Information Technology",
  "year_established": 2015,
  "company_address": "123 Tech Park, San Francisco, CA, USA",
  "contact_number": "+1-415-555-6789",
  "number_of_employees": 120,
  "products_or_services": ["Artificial Intelligence Software", "Cloud Computing Services"],
  "company_bio": "Innovative Tech Solutions is dedicated to enhancing the quality of life through technological innovations, offering products that include AI and cloud computing solutions.",
  "business_model": "A combination of B2B and B2C, primarily providing customized solutions for enterprise clients, as well as consumer-targeted products.",
  "annual_revenue": "$7 million",
  "market_position": "Leading position in the domestic market, currently expanding into international markets.",
  "competitive_advantage": "A strong technical team and advanced R&D capabilities give the company a competitive edge in the AI sector."
}]"##;

pub(super) const MATH_FORMULA_COMPLEX: &str = r##"Please generate {num_section} mathematical formulas in LaTeX format, with the difficulty increasing from simple to complex. Each formula should be preceded by a brief comment explaining its meaning or application. Start with basic algebraic formulas, then move to more complex formulas from calculus, linear algebra, probability theory, and other fields. Each formula should be enclosed in \begin{equation} and \end{equation}. Ensure clarity and continuity without any interruptions or omissions in the narrative throughout the document. Do not stop generating content until all {num_section} mathematical formulas are completed and '*** finished ***' is used to indicate the end of the document.

*** started ***

% Formula 1: Energy-mass equivalence: E=mc^2, where energy is equal to mass multiplied by the square of the speed of light.
% This formula is widely used in physics to describe the equivalence of energy and mass, especially in nuclear reactions and particle physics.
\begin{equation}
E = mc^2
\end{equation}"##;

pub(super) const JUDGE: &str = r##"You are an expert in evaluating text quality. Please evaluate the quality of an AI assistant’s response to a user’s writing request. Be as strict as possible.

You need to evaluate across the following six dimensions, with scores ranging from 1 to 5. The scoring criteria from 5 to 1 for each dimension are as follows:

1. Relevance: From content highly relevant and fully applicable to the user’s request to completely irrelevant or inapplicable.
2. Accuracy: From content completely accurate with no factual errors or misleading information to content with numerous errors and highly misleading.
3. Coherence: From clear structure with smooth logical connections to disorganized structure with no coherence.
4. Clarity: From clear language, rich in detail, and easy to understand to confusing expression with minimal details.
5. Breadth and Depth: From both broad and deep content with a lot of information to seriously lacking breadth and depth with minimal information.
6. Reading Experience: From excellent reading experience, engaging and easy to understand content to very poor reading experience, boring and hard to understand content.

Please evaluate the quality of the following response to a user’s request according to the above requirements.

<User Request>
{user_request}
</User Request>
<Response>
{model_response}
</Response>

Please evaluate the quality of the response. You must first provide a brief analysis of its quality, then give a comprehensive analysis with scores for each dimension. The output must strictly follow the JSON format: {"Analysis": ..., "Relevance": ..., "Accuracy": ..., "Coherence": ..., "Clarity": ..., "Breadth and Depth": ..., "Reading Experience": ...}. You do not need to consider whether the response meets the user’s length requirements in your evaluation. Ensure that only one integer between 1 and 5 is output for each dimension score."##;
