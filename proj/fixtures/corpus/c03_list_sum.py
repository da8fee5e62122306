def rain():
    values = []
    while True:
        text = input("Enter rainfall: ")
        if text == "-999":
            break
        try:
            number = float(text)
        except ValueError:
            print("Not a number")
            continue
        if number >= 0:
            values.append(number)
    if len(values) == 0:
        return 0
    return sum(values) / len(values)

if __name__ == "__main__":
    print(rain())
