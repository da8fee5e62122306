def rain():
    total = 0
    days = 0
    while True:
        entry = input("Day's rainfall: ")
        if entry == "-999":
            break
        try:
            mm = float(entry)
        except ValueError:
            print("Please give a number")
            continue
        if mm < 0:
            print("Negative values are ignored")
        else:
            total = total + mm
            days = days + 1
    if days > 0:
        average = total / days
        return average
    return 0

if __name__ == "__main__":
    print(rain())
